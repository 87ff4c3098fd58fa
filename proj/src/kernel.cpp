#include "duo/kernel.hpp"

#include "duo/error.hpp"
#include "duo/linalg.hpp"
#include "duo/parallel.hpp"
#include "duo/rng.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

namespace duo {

namespace {

void check_omega(double omega) {
  if (!(omega > 0.0 && omega < 1.0))
    throw DomainError("percentile omega must lie in (0, 1), got " + std::to_string(omega));
}

// Lexicographic order on (rows, contents) so both argument orders pick the same GEMM.
bool canonical_first(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  const double* pa = a.data();
  const double* pb = b.data();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (pa[i] != pb[i]) return pa[i] < pb[i];
  return true;
}

double direct_sq(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b,
                 Eigen::Index j) {
  double s = 0.0;
  for (Eigen::Index f = 0; f < a.cols(); ++f) {
    double t = a(i, f) - b(j, f);
    s += t * t;
  }
  return s;
}

// Expanded form with clamping; near-zero entries (cancellation regime) are recomputed directly.
Eigen::MatrixXd expanded_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   const Eigen::MatrixXd& cross) {
  Eigen::VectorXd na = a.rowwise().squaredNorm();
  Eigen::VectorXd nb = b.rowwise().squaredNorm();
  Eigen::MatrixXd d(a.rows(), b.rows());
  parallel_for(b.rows(), [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t j = begin; j < end; ++j)
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        double v = na(i) + nb(j) - 2.0 * cross(i, j);
        if (v <= 1e-8 * (na(i) + nb(j))) v = direct_sq(a, i, b, j);
        d(i, j) = std::max(v, 0.0);
      }
  });
  return d;
}

std::size_t order_statistic_rank(double omega, std::size_t count) {
  // smallest k with k / count >= omega
  auto k = static_cast<std::size_t>(std::ceil(omega * static_cast<double>(count)));
  if (k > count) k = count;
  while (k > 1 && static_cast<double>(k - 1) / static_cast<double>(count) >= omega) --k;
  while (k < count && static_cast<double>(k) / static_cast<double>(count) < omega) ++k;
  return std::max<std::size_t>(k, 1);
}

}  // namespace

DistanceMatrix cross_sq_distances(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() != y.cols())
    throw ShapeError("feature counts differ: " + std::to_string(x.cols()) + " vs " +
                     std::to_string(y.cols()));
  if (x.rows() == y.rows() && x == y) {
    Eigen::MatrixXd g = linalg::gram_rows(x);
    Eigen::MatrixXd d = expanded_distances(x, x, g);
    d.diagonal().setZero();
    d.triangularView<Eigen::StrictlyUpper>() = d.transpose();
    return {std::move(d)};
  }
  if (canonical_first(x, y)) {
    Eigen::MatrixXd cross = x * y.transpose();
    return {expanded_distances(x, y, cross)};
  }
  Eigen::MatrixXd cross = y * x.transpose();
  Eigen::MatrixXd d = expanded_distances(y, x, cross);
  return {d.transpose()};
}

DistanceMatrix cross_sq_distances(const DataMatrix& x, const DataMatrix& y) {
  return cross_sq_distances(x.values(), y.values());
}

double percentile_bandwidth(std::vector<double> values, double omega) {
  check_omega(omega);
  if (values.empty()) throw ShapeError("empty distance set");
  std::size_t k = order_statistic_rank(omega, values.size());
  auto kth = values.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(values.begin(), kth, values.end());
  double h = *kth;
  if (h > 0.0) return h;
  double smallest = std::numeric_limits<double>::infinity();
  for (double v : values)
    if (v > 0.0 && v < smallest) smallest = v;
  if (!std::isfinite(smallest))
    throw DegenerateError("all pairwise distances are zero; datasets are pointwise identical");
  return smallest;
}

Bandwidth select_bandwidth(const DistanceMatrix& d, double omega) {
  check_omega(omega);
  std::vector<double> flat(d.d.data(), d.d.data() + d.d.size());
  return {percentile_bandwidth(std::move(flat), omega), omega, BandwidthSource::percentile};
}

Bandwidth fixed_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("bandwidth must be positive");
  return {h, kDefaultOmega, BandwidthSource::fixed};
}

double kernel_value(double d, double h) {
  if (d == 0.0) return 1.0;
  double v = std::exp(-d / h);
  if (v >= 1.0) return std::nextafter(1.0, 0.0);
  if (v < DBL_MIN) return DBL_MIN;
  return v;
}

KernelMatrix build_duo_kernel(const DistanceMatrix& d, const Bandwidth& h) {
  if (!(h.h > 0.0)) throw DomainError("bandwidth must be positive");
  KernelMatrix k{Eigen::MatrixXd(d.n1(), d.n2()), h.h};
  parallel_for(d.n2(), [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t j = begin; j < end; ++j)
      for (Eigen::Index i = 0; i < d.n1(); ++i) k.k(i, j) = kernel_value(d.d(i, j), h.h);
  });
  return k;
}

MergedKernel merged_kernel(const DataMatrix& x, const DataMatrix& y, double omega) {
  check_omega(omega);
  if (x.p() != y.p())
    throw ShapeError("feature counts differ: " + std::to_string(x.p()) + " vs " +
                     std::to_string(y.p()));
  const Index n1 = x.n(), n2 = y.n(), m = n1 + n2;
  Eigen::MatrixXd z(m, x.p());
  z << x.values(), y.values();
  Eigen::MatrixXd g = linalg::gram_rows(z);
  Eigen::MatrixXd d = expanded_distances(z, z, g);
  d.diagonal().setZero();
  d.triangularView<Eigen::StrictlyUpper>() = d.transpose();

  std::vector<double> off;
  off.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
  for (Index j = 0; j < m; ++j)
    for (Index i = j + 1; i < m; ++i) off.push_back(d(i, j));
  double q = percentile_bandwidth(std::move(off), omega);

  MergedKernel out{Eigen::MatrixXd(m, m), q, n1, n2};
  parallel_for(m, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t j = begin; j < end; ++j)
      for (Index i = j; i < m; ++i) out.f(i, j) = kernel_value(d(i, j), q);
  });
  out.f.triangularView<Eigen::StrictlyUpper>() = out.f.transpose();
  return out;
}

const std::vector<double>& default_omega_grid() {
  static const std::vector<double> grid{0.2, 0.35, 0.5, 0.65, 0.8};
  return grid;
}

AutoOmegaResult auto_omega_scores(const DataMatrix& x, const DataMatrix& y,
                                  const std::vector<double>& grid, int r, int b,
                                  std::uint64_t seed) {
  if (x.p() != y.p()) throw ShapeError("feature counts differ");
  if (x.n() < 4 || y.n() < 4) throw InsufficientSamples("auto_omega needs n1, n2 >= 4");
  if (grid.empty()) throw DomainError("omega grid is empty");
  for (double w : grid) check_omega(w);
  if (r < 1 || b < 1) throw DomainError("auto_omega needs r >= 1 and b >= 1");
  const Index h1 = x.n() / 2, h2 = y.n() / 2;
  if (r + 1 > std::min(h1, h2))
    throw IndexError("target rank " + std::to_string(r) + " too large for half-size subsamples");

  std::vector<double> sums(grid.size(), 0.0);
  for (int rep = 0; rep < b; ++rep) {
    rng::Stream sx(seed, 2 * static_cast<std::uint64_t>(rep), rng::Purpose::resample);
    rng::Stream sy(seed, 2 * static_cast<std::uint64_t>(rep) + 1, rng::Purpose::resample);
    auto ix = rng::sample_without_replacement(sx, x.n(), h1);
    auto iy = rng::sample_without_replacement(sy, y.n(), h2);
    Eigen::MatrixXd xs(h1, x.p()), ys(h2, y.p());
    for (Index i = 0; i < h1; ++i) xs.row(i) = x.values().row(ix[static_cast<std::size_t>(i)]);
    for (Index i = 0; i < h2; ++i) ys.row(i) = y.values().row(iy[static_cast<std::size_t>(i)]);
    DistanceMatrix d = cross_sq_distances(xs, ys);
    std::vector<double> flat(d.d.data(), d.d.data() + d.d.size());

    for (std::size_t g = 0; g < grid.size(); ++g) {
      KernelMatrix k = build_duo_kernel(d, {percentile_bandwidth(flat, grid[g]), grid[g],
                                            BandwidthSource::percentile});
      Eigen::MatrixXd small = h1 <= h2 ? linalg::gram_rows(k.k)
                                       : linalg::gram_rows(k.k.transpose().eval());
      Eigen::VectorXd ev = linalg::sym_eigenvalues(small, r + 1);
      double top = std::sqrt(std::max(ev(0), 0.0));
      double sr = std::sqrt(std::max(ev(r - 1), 0.0));
      double sr1 = std::sqrt(std::max(ev(r), 0.0));
      double score = sr1 <= kZeroSingularRel * top ? std::numeric_limits<double>::infinity() : sr / sr1;
      sums[g] += score;
    }
  }

  AutoOmegaResult out;
  out.grid = grid;
  std::size_t best = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.mean_scores.push_back(sums[g] / b);
    if (g == 0) continue;
    double cur = out.mean_scores[g], top = out.mean_scores[best];
    if (cur > top || (cur == top && grid[g] < grid[best])) best = g;
  }
  DistanceMatrix full = cross_sq_distances(x, y);
  out.bandwidth = select_bandwidth(full, grid[best]);
  out.bandwidth.source = BandwidthSource::resampled;
  return out;
}

Bandwidth auto_omega(const DataMatrix& x, const DataMatrix& y, const std::vector<double>& grid,
                     int r, int b, std::uint64_t seed) {
  return auto_omega_scores(x, y, grid, r, b, seed).bandwidth;
}

}  // namespace duo
