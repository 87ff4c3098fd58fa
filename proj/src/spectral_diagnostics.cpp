#include "duo/spectral_diagnostics.hpp"

#include "duo/error.hpp"
#include "duo/linalg.hpp"
#include "duo/parallel.hpp"
#include "duo/rng.hpp"
#include "duo/screening.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace duo {

namespace {

// Eigenvalues of K K^T / (n1 n2), descending, through the smaller Gram matrix.
Eigen::VectorXd normalized_gram_spectrum(const KernelMatrix& k) {
  Eigen::MatrixXd g = k.n1() <= k.n2() ? linalg::gram_rows(k.k)
                                       : linalg::gram_rows(k.k.transpose().eval());
  g /= static_cast<double>(k.n1()) * static_cast<double>(k.n2());
  return linalg::sym_eigenvalues(g);
}

Eigen::VectorXd truncate_nonzero(const Eigen::VectorXd& w) {
  if (w.size() == 0 || !(w(0) > 0.0)) return Eigen::VectorXd(0);
  const double cut = 1e-12 * w(0);
  Index keep = 0;
  while (keep < w.size() && w(keep) > cut) ++keep;
  return w.head(keep);
}

double mean_sq_row_norm(const Eigen::MatrixXd& a) {
  return a.rowwise().squaredNorm().sum() / static_cast<double>(a.rows());
}

}  // namespace

MpLaw mp_edges(double phi) {
  if (!(phi > 0.0) || !std::isfinite(phi))
    throw DomainError("aspect ratio must be positive, got " + std::to_string(phi));
  double r = std::sqrt(phi);
  double a = r + 1.0 / r;
  return {phi, std::max(a - 2.0, 0.0), a + 2.0};
}

Eigen::VectorXd scaled_bulk_eigenvalues(const KernelMatrix& k, Index p) {
  if (p < 1) throw DomainError("feature count must be >= 1");
  double s = std::sqrt(static_cast<double>(k.n1()) * static_cast<double>(k.n2())) /
             static_cast<double>(p);
  return truncate_nonzero(s * normalized_gram_spectrum(k));
}

Eigen::VectorXd calibrated_bulk_eigenvalues(const KernelMatrix& k, const DataMatrix& x,
                                            const DataMatrix& y) {
  if (x.n() != k.n1() || y.n() != k.n2() || x.p() != y.p())
    throw ShapeError("datasets do not match the kernel dimensions");
  const double p = static_cast<double>(x.p());
  const double m1 = mean_sq_row_norm(x.values()), m2 = mean_sq_row_norm(y.values());
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw DegenerateError("dataset with zero spread");
  const double h = k.h;
  const double log_scale = 2.0 * std::log(h) +
                           0.5 * std::log(static_cast<double>(k.n1()) * static_cast<double>(k.n2())) +
                           2.0 * (m1 + m2) / h - std::log(4.0 * p * (m1 / p) * (m2 / p));
  return truncate_nonzero(std::exp(log_scale) * normalized_gram_spectrum(k));
}

NoiseRegimeReport detect_noise_regime(const Eigen::VectorXd& w, int k_skip, double c1, double c2) {
  if (k_skip < 1) throw InvalidThreshold("k_skip must be >= 1");
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw InvalidThreshold("c1 and c2 must be positive");
  for (Index i = 0; i < w.size(); ++i) {
    if (!(w(i) >= 0.0)) throw DomainError("eigenvalues must be nonnegative");
    if (i > 0 && w(i) > w(i - 1)) throw DomainError("eigenvalues must be nonincreasing");
  }
  NoiseRegimeReport r;
  r.w = w;
  r.k_skip = k_skip;
  r.c1 = c1;
  r.c2 = c2;
  if (w.size() == 0) return r;
  r.bulk_median = lower_median(std::vector<double>(w.data(), w.data() + w.size()));
  const double floor = 1e-10 * w(0);
  bool gaps_small = true;
  // 1-based i from k_skip; ratio w_i / w_{i+1} while w_{i+1} stays in the upper bulk
  for (Index i = k_skip; i < w.size(); ++i) {
    double next = w(i);
    if (next < r.bulk_median || next <= floor) break;
    double ratio = w(i - 1) / next;
    r.gap_ratios.push_back(ratio);
    if (!(ratio < 1.0 + c1)) gaps_small = false;
  }
  r.noise_dominated = gaps_small && r.bulk_median > c2;
  return r;
}

const std::vector<double>& oracle_levels() {
  static const std::vector<double> levels = [] {
    std::vector<double> l{0.01};
    for (int i = 1; i <= 19; ++i) l.push_back(0.05 * i);
    l.push_back(0.99);
    return l;
  }();
  return levels;
}

QuantileTable free_conv_quantiles_mc(Index n1, Index n2, Index p, int reps, std::uint64_t seed) {
  if (reps < 1) throw DomainError("reps must be >= 1");
  if (n1 < 2 || n2 < 2 || p < 2) throw DomainError("dimensions must be >= 2");
  const Index keep = std::min({n1, n2, p});
  const double scale = 1.0 / (static_cast<double>(p) *
                              std::sqrt(static_cast<double>(n1) * static_cast<double>(n2)));
  std::vector<Eigen::VectorXd> per_rep(static_cast<std::size_t>(reps));
  parallel_for(
      reps,
      [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
          std::uint64_t s = rng::derive_seed(seed, static_cast<std::uint64_t>(r));
          rng::Stream s1(s, 0, rng::Purpose::oracle), s2(s, 1, rng::Purpose::oracle);
          Eigen::MatrixXd w1(n1, p), w2(n2, p);
          for (Index j = 0; j < p; ++j)
            for (Index i = 0; i < n1; ++i) w1(i, j) = s1.normal();
          for (Index j = 0; j < p; ++j)
            for (Index i = 0; i < n2; ++i) w2(i, j) = s2.normal();
          // nonzero spectrum of W1'W1 W2'W2 equals that of (W1 W2')(W1 W2')'
          Eigen::MatrixXd a = w1 * w2.transpose();
          Eigen::MatrixXd g = n1 <= n2 ? linalg::gram_rows(a) : linalg::gram_rows(a.transpose().eval());
          Eigen::VectorXd ev = linalg::sym_eigenvalues(g, std::min(keep, g.rows()));
          per_rep[static_cast<std::size_t>(r)] = (ev * scale).cwiseMax(0.0);
        }
      },
      1);

  QuantileTable t;
  for (const auto& ev : per_rep) t.pooled.insert(t.pooled.end(), ev.data(), ev.data() + ev.size());
  std::sort(t.pooled.begin(), t.pooled.end());
  const std::size_t count = t.pooled.size();
  t.levels = oracle_levels();
  for (double q : t.levels) {
    auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(count)));
    while (k > 1 && static_cast<double>(k - 1) / static_cast<double>(count) >= q) --k;
    k = std::clamp<std::size_t>(k, 1, count);
    t.values.push_back(t.pooled[k - 1]);
  }
  return t;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ShapeError("KS distance needs nonempty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double t = j >= sb.size() || (i < sa.size() && sa[i] <= sb[j]) ? sa[i] : sb[j];
    while (i < sa.size() && sa[i] == t) ++i;
    while (j < sb.size() && sb[j] == t) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

}  // namespace duo
