#include "duo/error.hpp"
#include "duo/simulation.hpp"
#include "duo/spectral_diagnostics.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace duo;

TEST_CASE("Marchenko-Pastur edges") {
  MpLaw a = mp_edges(1.0), b = mp_edges(4.0), c = mp_edges(0.25);
  CHECK(a.gamma_minus == 0.0);
  CHECK(a.gamma_plus == 4.0);
  CHECK(b.gamma_minus == 0.5);
  CHECK(b.gamma_plus == 4.5);
  CHECK(c.gamma_minus == 0.5);
  CHECK(c.gamma_plus == 4.5);
  for (double phi : {0.1, 0.3, 2.0, 7.5}) {
    MpLaw p = mp_edges(phi), q = mp_edges(1.0 / phi);
    CHECK(p.gamma_minus == doctest::Approx(q.gamma_minus).epsilon(1e-14));
    CHECK(p.gamma_plus == doctest::Approx(q.gamma_plus).epsilon(1e-14));
    CHECK(p.gamma_minus >= 0.0);
    CHECK(p.gamma_minus < p.gamma_plus);
  }
  CHECK_THROWS_AS(mp_edges(0.0), DomainError);
  CHECK_THROWS_AS(mp_edges(-1.0), DomainError);
}

TEST_CASE("scaled bulk eigenvalues of an all-ones kernel") {
  KernelMatrix k{Eigen::MatrixXd::Ones(12, 27), 1.0};
  Eigen::VectorXd w = scaled_bulk_eigenvalues(k, 9);
  REQUIRE(w.size() == 1);
  CHECK(w(0) == doctest::Approx(std::sqrt(12.0 * 27.0) / 9.0).epsilon(1e-13));
  CHECK_THROWS_AS(scaled_bulk_eigenvalues(k, 0), DomainError);
}

TEST_CASE("scaled bulk eigenvalues are nonincreasing and at most min(n1,n2)") {
  DataPair pair = sample_pure_noise_pair(40, 70, 50, 1.0, 1.0, 5);
  DistanceMatrix d = cross_sq_distances(pair.x, pair.y);
  KernelMatrix k = build_duo_kernel(d, select_bandwidth(d, 0.5));
  Eigen::VectorXd w = scaled_bulk_eigenvalues(k, 50);
  CHECK(w.size() <= 40);
  for (Index i = 1; i < w.size(); ++i) CHECK(w(i) <= w(i - 1));
  Eigen::VectorXd c = calibrated_bulk_eigenvalues(k, center_columns(pair.x), center_columns(pair.y));
  CHECK(c.size() == w.size());
  // the plug-in normalization is a constant multiple of the plain one
  CHECK((c / c(0) - w / w(0)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("noise detector examples and invariants") {
  Eigen::VectorXd w(10);
  w << 9, 8, 7, 6, 4, 2, 1.9, 1.8, 1.7, 1.6;
  NoiseRegimeReport r = detect_noise_regime(w, 5, 0.5, 0.01);
  REQUIRE_FALSE(r.gap_ratios.empty());
  CHECK(r.gap_ratios[0] == 2.0);
  CHECK_FALSE(r.noise_dominated);

  Eigen::VectorXd flat(10);
  flat << 3, 2.9, 2.8, 2.7, 2.6, 2.5, 2.45, 2.4, 2.35, 2.3;
  NoiseRegimeReport f = detect_noise_regime(flat);
  CHECK(f.noise_dominated);
  CHECK(f.bulk_median == 2.5);
  NoiseRegimeReport tiny = detect_noise_regime(flat * 1e-3);
  CHECK_FALSE(tiny.noise_dominated);  // bulk median below c2

  for (double c : {0.25, 8.0, 1024.0}) {
    NoiseRegimeReport s = detect_noise_regime(flat * c);
    CHECK(s.gap_ratios == f.gap_ratios);
  }
  NoiseRegimeReport odd = detect_noise_regime(flat * 3.7);
  REQUIRE(odd.gap_ratios.size() == f.gap_ratios.size());
  for (std::size_t i = 0; i < f.gap_ratios.size(); ++i)
    CHECK(odd.gap_ratios[i] == doctest::Approx(f.gap_ratios[i]).epsilon(1e-15));

  for (const auto& rep : {r, f, tiny}) {
    bool all_small = true;
    for (double g : rep.gap_ratios) all_small = all_small && g < 1 + rep.c1;
    CHECK(rep.noise_dominated == (all_small && rep.bulk_median > rep.c2));
  }

  CHECK_THROWS_AS(detect_noise_regime(w, 0), InvalidThreshold);
  CHECK_THROWS_AS(detect_noise_regime(w, 5, 0.0), InvalidThreshold);
  CHECK_THROWS_AS(detect_noise_regime(w, 5, 0.1, -1.0), InvalidThreshold);
  Eigen::VectorXd up(3);
  up << 1, 2, 3;
  CHECK_THROWS_AS(detect_noise_regime(up), DomainError);
}

TEST_CASE("Monte Carlo oracle quantiles") {
  QuantileTable t = free_conv_quantiles_mc(60, 80, 100, 5, 3);
  CHECK(t.levels.size() == 21);
  CHECK(t.levels.front() == 0.01);
  CHECK(t.levels.back() == 0.99);
  CHECK(t.pooled.size() == 5 * 60);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    CHECK(t.values[i] >= 0.0);
    if (i) CHECK(t.values[i] >= t.values[i - 1]);
  }
  QuantileTable again = free_conv_quantiles_mc(60, 80, 100, 5, 3);
  CHECK(again.values == t.values);
  CHECK_THROWS_AS(free_conv_quantiles_mc(60, 80, 100, 0, 3), DomainError);
}

TEST_CASE("oracle upper edge stabilizes between 20 and 40 reps") {
  QuantileTable a = free_conv_quantiles_mc(100, 100, 100, 20, 1);
  QuantileTable b = free_conv_quantiles_mc(100, 100, 100, 40, 2);
  CHECK(std::abs(a.values.back() / b.values.back() - 1.0) <= 0.05);
}

TEST_CASE("calibrated pure-noise spectrum sits inside the oracle band") {
  DataPair pair = sample_pure_noise_pair(200, 200, 400, 1.0, 1.0, 17);
  DataMatrix x = center_columns(pair.x), y = center_columns(pair.y);
  DistanceMatrix d = cross_sq_distances(x, y);
  KernelMatrix k = build_duo_kernel(d, select_bandwidth(d, 0.5));
  Eigen::VectorXd w = calibrated_bulk_eigenvalues(k, x, y);
  QuantileTable t = free_conv_quantiles_mc(200, 200, 400, 10, 5);
  int inside = 0;
  for (Index i = 0; i < w.size(); ++i) inside += w(i) >= t.values.front() && w(i) <= t.values.back();
  CHECK(inside >= 0.9 * static_cast<double>(w.size()));
  CHECK(ks_distance(std::span<const double>(w.data(), static_cast<std::size_t>(w.size())), t.pooled) <= 0.1);
}

TEST_CASE("ks distance") {
  std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4}, c{10, 11}, d{2, 3, 4, 5};
  CHECK(ks_distance(a, b) == 0.0);
  CHECK(ks_distance(a, c) == 1.0);
  CHECK(ks_distance(a, d) == 0.25);
  CHECK_THROWS_AS(ks_distance(a, std::vector<double>{}), ShapeError);
}
