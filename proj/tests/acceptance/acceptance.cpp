// Acceptance suite. Prints one PASS/FAIL line per criterion plus INFO lines with
// the measured quantities. Exit status is nonzero when any selected criterion fails.
#include "duo/embedding.hpp"
#include "duo/evaluation.hpp"
#include "duo/experiments.hpp"
#include "duo/linalg.hpp"
#include "duo/parallel.hpp"
#include "duo/rng.hpp"
#include "duo/screening.hpp"
#include "duo/simulation.hpp"
#include "duo/spectral_diagnostics.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

using namespace duo;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void info(const std::string& s) { std::printf("INFO %s\n", s.c_str()); }

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  double mx = mean(lx), my = mean(ly), sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

KernelMatrix kernel_of(const DataMatrix& x, const DataMatrix& y, double omega = kDefaultOmega) {
  DistanceMatrix d = cross_sq_distances(x, y);
  return build_duo_kernel(d, select_bandwidth(d, omega));
}

Eigen::MatrixXd add_noise(const Eigen::MatrixXd& m, double var, rng::Stream& s) {
  Eigen::MatrixXd out = m;
  const double sd = std::sqrt(var);
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j) out(i, j) += sd * s.normal();
  return out;
}

constexpr double kTaus[] = {0, 1, 2, 3};

Verdict clustering_criterion(int setting) {
  constexpr int reps = 20;
  ClusteringStudy study;
  study.setting = setting;
  std::vector<MethodScores> scores(4 * reps);
  parallel_for(
      4 * reps,
      [&](std::int64_t b, std::int64_t e) {
        for (auto t = b; t < e; ++t) {
          auto ti = static_cast<std::size_t>(t / reps);
          scores[static_cast<std::size_t>(t)] = clustering_replicate(
              study, kTaus[ti], rng::derive_seed(100 * static_cast<std::uint64_t>(setting) + ti,
                                                 static_cast<std::uint64_t>(t % reps)));
        }
      },
      1);
  bool ok = true;
  std::string detail;
  for (std::size_t ti = 0; ti < 4; ++ti) {
    std::vector<double> prop, pca, jpca;
    for (int r = 0; r < reps; ++r) {
      const auto& s = scores[ti * reps + static_cast<std::size_t>(r)];
      prop.push_back(s.prop);
      pca.push_back(s.pca);
      jpca.push_back(s.jpca);
    }
    bool here = mean(prop) >= mean(pca) && mean(prop) >= mean(jpca);
    ok = ok && here;
    info(fmt("setting %d tau=%g mean RI prop=%.4f pca=%.4f j-pca=%.4f %s", setting, kTaus[ti],
             mean(prop), mean(pca), mean(jpca), here ? "ok" : "prop below a baseline"));
    detail += fmt("%stau%g:%.4f/%.4f/%.4f", ti ? " " : "", kTaus[ti], mean(prop), mean(pca), mean(jpca));
  }
  return {ok, "mean RI prop/pca/j-pca " + detail};
}

Verdict criterion_1() { return clustering_criterion(1); }
Verdict criterion_2() { return clustering_criterion(2); }

Verdict criterion_3() {
  constexpr int reps = 20;
  auto run_study = [&](bool torus_only) {
    ManifoldStudy study;
    study.torus_coords_only = torus_only;
    std::vector<MethodScores> s(reps);
    parallel_for(
        reps,
        [&](std::int64_t b, std::int64_t e) {
          for (auto r = b; r < e; ++r)
            s[static_cast<std::size_t>(r)] = manifold_replicate(study, rng::derive_seed(300, static_cast<std::uint64_t>(r)));
        },
        1);
    std::vector<double> prop, pca, jpca;
    for (const auto& m : s) {
      prop.push_back(m.prop);
      pca.push_back(m.pca);
      jpca.push_back(m.jpca);
    }
    return std::array<double, 3>{mean(prop), mean(pca), mean(jpca)};
  };
  auto lit = run_study(false);
  auto coords = run_study(true);
  info(fmt("torus Jaccard vs full clean y: prop=%.4f pca=%.4f j-pca=%.4f", lit[0], lit[1], lit[2]));
  info(fmt("torus Jaccard vs torus coordinates only: prop=%.4f pca=%.4f j-pca=%.4f (margin %.4f)",
           coords[0], coords[1], coords[2], coords[0] - coords[1]));
  return {lit[0] - lit[1] >= 0.05,
          fmt("mean Jaccard prop=%.4f pca=%.4f margin=%.4f (need >= 0.05)", lit[0], lit[1], lit[0] - lit[1])};
}

Verdict criterion_4() {
  rng::Stream s(400, 0, rng::Purpose::misc);
  double worst = 0.0;
  int compared = 0;
  for (int c = 0; c < 50; ++c) {
    Index n1 = c == 0 ? 200 : 2 + static_cast<Index>(s.below(199));
    Index n2 = c == 0 ? 300 : 2 + static_cast<Index>(s.below(299));
    Index p = 1 + static_cast<Index>(s.below(40));
    double scale = std::exp(s.uniform(-2.0, 2.0));
    Eigen::MatrixXd x(n1, p), y(n2, p);
    for (Index i = 0; i < n1; ++i)
      for (Index j = 0; j < p; ++j) x(i, j) = scale * s.normal();
    for (Index i = 0; i < n2; ++i)
      for (Index j = 0; j < p; ++j) y(i, j) = scale * s.normal() + 0.5;
    KernelMatrix k = kernel_of(DataMatrix(x), DataMatrix(y), s.uniform(0.1, 0.9));
    const double nn = static_cast<double>(n1) * static_cast<double>(n2);
    Eigen::VectorXd e1 = linalg::sym_eigenvalues(linalg::gram_rows(k.k) / nn);
    Eigen::VectorXd e2 = linalg::sym_eigenvalues(linalg::gram_rows(k.k.transpose().eval()) / nn);
    for (Index i = 0; i < std::min(n1, n2); ++i) {
      if (e1(i) < 1e-6 * e1(0) && e2(i) < 1e-6 * e2(0)) break;
      worst = std::max(worst, std::abs(e1(i) - e2(i)) / std::max(e1(i), e2(i)));
      ++compared;
    }
  }
  return {worst <= 1e-8, fmt("50 kernels, %d nonzero eigenvalue pairs, max relative gap %.3e (need <= 1e-8)",
                             compared, worst)};
}

struct ExtensionCheck {
  int components = 0, failing = 0;
  double worst = 0.0, smallest_ratio = 1.0;
};

ExtensionCheck extension_identity(const DataMatrix& x_raw, const DataMatrix& y_raw) {
  DataMatrix x = center_columns(x_raw), y = center_columns(y_raw);
  DistanceMatrix d = cross_sq_distances(x, y);
  Bandwidth h = select_bandwidth(d, kDefaultOmega);
  ScaledSvd svd = duo_svd(build_duo_kernel(d, h));
  ExtensionContext ctx(x, y, h, svd);
  IndexSet comps;
  for (Index i = 0; i < svd.s.size() && svd.s(i) > 1e-8 * svd.s(0); ++i) comps.push_back(static_cast<int>(i + 1));
  Eigen::MatrixXd phi = extend_points(Side::left, x.values(), comps, ctx);
  Eigen::MatrixXd psi = extend_points(Side::right, y.values(), comps, ctx);
  ExtensionCheck out;
  out.components = static_cast<int>(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Index i = comps[c] - 1, col = static_cast<Index>(c);
    Eigen::VectorXd ru = std::sqrt(static_cast<double>(x.n())) * svd.u.col(i);
    Eigen::VectorXd rv = std::sqrt(static_cast<double>(y.n())) * svd.v.col(i);
    double err = std::max((phi.col(col) - ru).cwiseAbs().maxCoeff() / ru.cwiseAbs().maxCoeff(),
                          (psi.col(col) - rv).cwiseAbs().maxCoeff() / rv.cwiseAbs().maxCoeff());
    out.worst = std::max(out.worst, err);
    if (err > 1e-8) ++out.failing;
    out.smallest_ratio = std::min(out.smallest_ratio, svd.s(i) / svd.s(0));
  }
  return out;
}

Verdict criterion_5() {
  struct Case {
    std::string name;
    DataPair data;
  };
  std::vector<Case> cases;
  cases.push_back({"pure noise 150x200 p=800", sample_pure_noise_pair(150, 200, 800, 1.0, 1.0, 500)});
  {
    ClusterPair c = sample_setting1(150, 200, 100, 1.0, 501);
    cases.push_back({"setting 1 150x200 p=100", {c.x, c.y}});
  }
  {
    TorusPair t = sample_torus_pair(150, 200, 100, 0.16, 1.0, 502);
    cases.push_back({"torus pair 150x200 p=100", {t.x, t.y}});
  }
  {
    rng::Stream sx(503, 0, rng::Purpose::manifold), sy(503, 1, rng::Purpose::manifold);
    cases.push_back({"clean circle 200x250", {DataMatrix(sample_circle(200, 1.0, sx)),
                                              DataMatrix(sample_circle(250, 1.0, sy))}});
  }
  bool ok = true;
  double worst = 0;
  int total = 0;
  for (const auto& c : cases) {
    ExtensionCheck r = extension_identity(c.data.x, c.data.y);
    info(fmt("extension %s: %d components, worst rel err %.3e, smallest s_i/s_1 %.3e, failing %d",
             c.name.c_str(), r.components, r.worst, r.smallest_ratio, r.failing));
    ok = ok && r.failing == 0;
    worst = std::max(worst, r.worst);
    total += r.components;
  }
  return {ok, fmt("%d components over %zu datasets, worst relative error %.3e (need <= 1e-8)", total,
                  cases.size(), worst)};
}

Eigen::VectorXd circle_top5(Index n, std::uint64_t seed) {
  rng::Stream sx(seed, 0, rng::Purpose::manifold), sy(seed, 1, rng::Purpose::manifold);
  DataMatrix x(sample_circle(n, 1.0, sx)), y(sample_circle(n, 1.0, sy));
  ScaledSvd svd = duo_svd(kernel_of(x, y), 5);
  return svd.s.array().square();
}

Verdict criterion_6() {
  Eigen::VectorXd ref = Eigen::VectorXd::Zero(5);
  for (std::uint64_t r = 0; r < 3; ++r) ref += circle_top5(4000, rng::derive_seed(600, r));
  ref /= 3.0;
  const std::vector<Index> sizes{250, 500, 1000, 2000};
  std::vector<double> ns, devs;
  for (Index n : sizes) {
    int reps = n <= 1000 ? 10 : 5;
    std::vector<double> d;
    for (int r = 0; r < reps; ++r)
      d.push_back((circle_top5(n, rng::derive_seed(601 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r))) - ref)
                      .cwiseAbs()
                      .maxCoeff());
    ns.push_back(static_cast<double>(n));
    devs.push_back(mean(d));
    info(fmt("circle n=%ld mean sup top-5 eigenvalue deviation %.4e", static_cast<long>(n), mean(d)));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < devs.size(); ++i) monotone = monotone && devs[i] < devs[i - 1];
  double slope = loglog_slope(ns, devs);
  return {monotone && slope <= -0.35,
          fmt("deviations %s, log-log slope %.3f (need decreasing and <= -0.35)",
              monotone ? "decreasing" : "not monotone", slope)};
}

Verdict criterion_7() {
  const Index n = 600, p = 800;
  ClusterPair clean = sample_setting1(n, n, p, 0.0, 0.0, 0.0, 700);
  DataMatrix x0 = center_columns(clean.x_clean), y0 = center_columns(clean.y_clean);
  Eigen::VectorXd lambda = duo_svd(kernel_of(x0, y0)).s.array().square();
  Eigen::MatrixXd pooled(2 * n, p);
  pooled << x0.values(), y0.values();
  pooled.rowwise() -= pooled.colwise().mean();
  const double theta = pooled.rowwise().squaredNorm().mean();
  std::vector<double> etas, sups;
  int level = 0;
  for (double var : {0.01, 0.04, 0.16, 0.64}) {
    std::vector<double> d;
    for (std::uint64_t r = 0; r < 5; ++r) {
      std::uint64_t seed = rng::derive_seed(701 + static_cast<std::uint64_t>(level), r);
      rng::Stream nx(seed, 0, rng::Purpose::noise), ny(seed, 1, rng::Purpose::noise);
      DataMatrix x = center_columns(DataMatrix(add_noise(x0.values(), var, nx)));
      DataMatrix y = center_columns(DataMatrix(add_noise(y0.values(), var, ny)));
      Eigen::VectorXd mu = duo_svd(kernel_of(x, y)).s.array().square();
      d.push_back((mu - lambda).cwiseAbs().maxCoeff());
    }
    double eta = static_cast<double>(p) * var / theta + std::sqrt(var) / std::sqrt(theta);
    etas.push_back(eta);
    sups.push_back(mean(d));
    info(fmt("sigma^2=%g eta=%.4e mean sup|mu-lambda|=%.4e", var, eta, mean(d)));
    ++level;
  }
  double slope = loglog_slope(etas, sups);
  return {std::abs(slope - 1.0) <= 0.3, fmt("log-log slope %.3f (need 1 +- 0.3)", slope)};
}

Verdict criterion_8() {
  DataPair d = sample_pure_noise_pair(400, 400, 800, 1.0, 1.0, 800);
  DataMatrix x = center_columns(d.x), y = center_columns(d.y);
  KernelMatrix k = kernel_of(x, y);
  Eigen::VectorXd w = calibrated_bulk_eigenvalues(k, x, y);
  QuantileTable oracle = free_conv_quantiles_mc(400, 400, 800, 40, 801);
  double ks = ks_distance(std::span<const double>(w.data(), static_cast<std::size_t>(w.size())), oracle.pooled);
  Eigen::VectorXd plain = scaled_bulk_eigenvalues(k, 800);
  double ks_plain =
      ks_distance(std::span<const double>(plain.data(), static_cast<std::size_t>(plain.size())), oracle.pooled);
  info(fmt("oracle quantiles q01=%.4f q50=%.4f q99=%.4f; calibrated w median=%.4f", oracle.values.front(),
           oracle.values[10], oracle.values.back(), lower_median(std::vector<double>(w.data(), w.data() + w.size()))));
  info(fmt("KS with the plain sqrt(n1 n2)/p scaling: %.4f", ks_plain));
  return {ks <= 0.1, fmt("KS distance %.4f (need <= 0.1)", ks)};
}

bool detector_fires(const DataMatrix& x_raw, const DataMatrix& y_raw) {
  DataMatrix x = center_columns(x_raw), y = center_columns(y_raw);
  return detect_noise_regime(calibrated_bulk_eigenvalues(kernel_of(x, y), x, y)).noise_dominated;
}

Verdict criterion_9() {
  constexpr int reps = 50;
  std::vector<int> noise(reps), signal(reps);
  parallel_for(
      reps,
      [&](std::int64_t b, std::int64_t e) {
        for (auto r = b; r < e; ++r) {
          auto ur = static_cast<std::uint64_t>(r);
          DataPair d = sample_pure_noise_pair(400, 400, 800, 1.0, 1.0, rng::derive_seed(900, ur));
          noise[static_cast<std::size_t>(r)] = detector_fires(d.x, d.y);
          ClusterPair c = sample_setting1(400, 400, 800, kTaus[r % 4], rng::derive_seed(901, ur));
          signal[static_cast<std::size_t>(r)] = !detector_fires(c.x, c.y);
        }
      },
      1);
  double tpr = std::accumulate(noise.begin(), noise.end(), 0) / double(reps);
  double tnr = std::accumulate(signal.begin(), signal.end(), 0) / double(reps);
  return {tpr >= 0.9 && tnr >= 0.9,
          fmt("true-positive rate %.2f on pure noise, true-negative rate %.2f on setting 1 (need >= 0.90 each)",
              tpr, tnr)};
}

Verdict criterion_10() {
  constexpr int runs = 100;
  struct Case {
    std::string name;
    bool negative;
    std::function<DataPair(std::uint64_t, int)> make;
  };
  const Index n = 600, p = 800;
  std::vector<Case> cases{
      {"klein_vs_line", true,
       [&](std::uint64_t s, int) { return sample_negative_control(NegativeControl::klein_vs_line, n, n, s); }},
      {"torus_vs_noise", true,
       [&](std::uint64_t s, int) { return sample_negative_control(NegativeControl::torus_vs_noise, n, n, s); }},
      {"setting 1", false,
       [&](std::uint64_t s, int r) {
         ClusterPair c = sample_setting1(n, n, p, kTaus[r % 4], s);
         return DataPair{c.x, c.y};
       }},
      {"setting 2", false,
       [&](std::uint64_t s, int r) {
         ClusterPair c = sample_setting2(n, n, p, kTaus[r % 4], s);
         return DataPair{c.x, c.y};
       }},
      {"torus pair", false,
       [&](std::uint64_t s, int) {
         TorusPair t = sample_torus_pair(n, n, p, 0.16, 1.0, s);
         return DataPair{t.x, t.y};
       }},
  };
  bool ok = true;
  std::string detail;
  std::uint64_t base = 1000;
  for (const auto& c : cases) {
    std::vector<int> correct(runs);
    std::vector<double> medians(runs);
    parallel_for(
        runs,
        [&](std::int64_t b, std::int64_t e) {
          for (auto r = b; r < e; ++r) {
            DataPair d = c.make(rng::derive_seed(base, static_cast<std::uint64_t>(r)), static_cast<int>(r));
            AlignabilityReport rep = screen_alignability(center_columns(d.x), center_columns(d.y), kDefaultOmega,
                                                         kDefaultScreenK, default_screen_gamma());
            correct[static_cast<std::size_t>(r)] = rep.alignable != c.negative;
            medians[static_cast<std::size_t>(r)] = rep.median_purity;
          }
        },
        1);
    ++base;
    double rate = std::accumulate(correct.begin(), correct.end(), 0) / double(runs);
    double need = c.negative ? 0.95 : 0.99;
    bool here = rate >= need;
    ok = ok && here;
    info(fmt("screening %s: %s in %.2f of %d runs (need >= %.2f), mean median purity %.3f", c.name.c_str(),
             c.negative ? "flagged non-alignable" : "passed", rate, runs, need, mean(medians)));
    detail += fmt("%s%s=%.2f", detail.empty() ? "" : " ", c.name.c_str(), rate);
  }
  return {ok, "correct-verdict rates " + detail};
}

Verdict criterion_11() {
  rng::Stream s(1100, 0, rng::Purpose::misc);
  auto gaussian = [&](Index r, Index c, double sd) {
    Eigen::MatrixXd m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = sd * s.normal();
    return m;
  };

  double rot_err = 0.0;
  double kmin = 1.0, kmax = 0.0;
  for (int c = 0; c < 20; ++c) {
    Index p = 2 + static_cast<Index>(s.below(30));
    Eigen::MatrixXd x = gaussian(80 + static_cast<Index>(s.below(60)), p, 1.0);
    Eigen::MatrixXd y = gaussian(60 + static_cast<Index>(s.below(60)), p, 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(p, p, 1.0));
    Eigen::MatrixXd q = qr.householderQ();
    double omega = s.uniform(0.05, 0.95);
    KernelMatrix a = kernel_of(DataMatrix(x), DataMatrix(y), omega);
    KernelMatrix b = kernel_of(DataMatrix(x * q), DataMatrix(y * q), omega);
    rot_err = std::max(rot_err, (a.k - b.k).cwiseAbs().maxCoeff());
    kmin = std::min({kmin, a.k.minCoeff(), b.k.minCoeff()});
    kmax = std::max({kmax, a.k.maxCoeff(), b.k.maxCoeff()});
  }
  // extreme scales: huge distances against a tiny bandwidth, and duplicated points
  for (double sd : {1e-3, 1e3}) {
    Eigen::MatrixXd x = gaussian(50, 5, sd), y = gaussian(40, 5, sd);
    y.topRows(5) = x.topRows(5);
    DistanceMatrix d = cross_sq_distances(x, y);
    for (double omega : {0.01, 0.5, 0.99}) {
      KernelMatrix k = build_duo_kernel(d, select_bandwidth(d, omega));
      kmin = std::min(kmin, k.k.minCoeff());
      kmax = std::max(kmax, k.k.maxCoeff());
    }
    KernelMatrix tiny = build_duo_kernel(d, fixed_bandwidth(1e-300));
    kmin = std::min(kmin, tiny.k.minCoeff());
    kmax = std::max(kmax, tiny.k.maxCoeff());
  }

  bool monotone = true;
  for (int c = 0; c < 20; ++c) {
    DistanceMatrix d = cross_sq_distances(gaussian(40, 6, 1.0), gaussian(50, 6, 2.0));
    double prev = 0.0;
    for (int g = 1; g <= 99; ++g) {
      double h = select_bandwidth(d, g / 100.0).h;
      monotone = monotone && h >= prev;
      prev = h;
    }
  }

  int ri_mismatch = 0;
  for (int c = 0; c < 500; ++c) {
    int n = 2 + static_cast<int>(s.below(29));
    std::vector<int> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    int ka = 1 + static_cast<int>(s.below(6)), kb = 1 + static_cast<int>(s.below(6));
    for (auto& v : a) v = static_cast<int>(s.below(static_cast<std::uint64_t>(ka)));
    for (auto& v : b) v = static_cast<int>(s.below(static_cast<std::uint64_t>(kb)));
    long agree = 0, total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        agree += (a[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(j)]) ==
                 (b[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]);
        ++total;
      }
    double want = static_cast<double>(agree) / static_cast<double>(total);
    if (rand_index(LabeledPartition::from_labels(a), LabeledPartition::from_labels(b)) != want) ++ri_mismatch;
  }

  bool range_ok = kmin > 0.0 && kmax <= 1.0;
  info(fmt("rotation max |dK| %.3e; kernel entries in [%.3e, %.17g]; h monotone in omega: %s; "
           "Rand oracle mismatches %d/500",
           rot_err, kmin, kmax, monotone ? "yes" : "no", ri_mismatch));
  return {rot_err <= 1e-10 && monotone && ri_mismatch == 0 && range_ok,
          fmt("rotation %.2e (<= 1e-10), monotone %s, Rand mismatches %d, entries in (0,1] %s", rot_err,
              monotone ? "yes" : "no", ri_mismatch, range_ok ? "yes" : "no")};
}

Verdict criterion_12() {
  MpLaw a = mp_edges(1.0), b = mp_edges(4.0), c = mp_edges(0.25);
  bool ok = a.gamma_minus == 0.0 && a.gamma_plus == 4.0 && b.gamma_minus == 0.5 && b.gamma_plus == 4.5 &&
            c.gamma_minus == 0.5 && c.gamma_plus == 4.5;
  return {ok, fmt("mp_edges(1)=(%.17g,%.17g) mp_edges(4)=(%.17g,%.17g) mp_edges(0.25)=(%.17g,%.17g)",
                  a.gamma_minus, a.gamma_plus, b.gamma_minus, b.gamma_plus, c.gamma_minus, c.gamma_plus)};
}

struct Criterion {
  const char* title;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"setting-1 clustering beats pca and j-pca at every tau", criterion_1},
    {"setting-2 clustering beats pca and j-pca at every tau", criterion_2},
    {"torus Jaccard margin over pca", criterion_3},
    {"Gram identity of the two kernel operators", criterion_4},
    {"training-point extension identity", criterion_5},
    {"clean-signal eigenvalue convergence on the circle", criterion_6},
    {"noise robustness slope", criterion_7},
    {"bulk spectrum matches the free-convolution oracle", criterion_8},
    {"noise detector rates", criterion_9},
    {"alignability screening rates", criterion_10},
    {"invariance suite", criterion_11},
    {"Marchenko-Pastur edges", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duo-embed acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12); default all")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (int i = 1; i <= 12; ++i) {
    if (only != 0 && i != only) continue;
    const Criterion& c = kCriteria[i - 1];
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i, c.title, v.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
