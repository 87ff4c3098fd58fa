#include "duo/evaluation.hpp"

#include "duo/error.hpp"
#include "duo/linalg.hpp"
#include "duo/neighbors.hpp"
#include "duo/parallel.hpp"
#include "duo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

namespace duo {

namespace {

std::int64_t pairs(std::int64_t n) { return n * (n - 1) / 2; }

void check_k(int k, Index n) {
  if (k < 1 || k > n)
    throw InvalidK("cluster count " + std::to_string(k) + " must be in [1, " + std::to_string(n) +
                   "]");
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double sq_dist(const RowMatrix& a, Index i, const RowMatrix& b, Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

struct LloydRun {
  std::vector<int> labels;
  RowMatrix centers;
  double wcss = 0.0;
  std::vector<double> history;
};

// Assigns each point to its nearest center (ties: lower center index) and returns WCSS.
double assign(const RowMatrix& pts, const RowMatrix& centers, std::vector<int>& labels,
              std::vector<double>& cost) {
  double total = 0.0;
  for (Index i = 0; i < pts.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Index c = 0; c < centers.rows(); ++c) {
      double d = sq_dist(pts, i, centers, c);
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
    cost[static_cast<std::size_t>(i)] = best;
    total += best;
  }
  return total;
}

// Moves the worst-served point of a multi-point cluster into each empty cluster.
double repair_empty(const RowMatrix& pts, RowMatrix& centers, std::vector<int>& labels,
                    std::vector<double>& cost) {
  const int k = static_cast<int>(centers.rows());
  std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] > 0) continue;
    Index worst = -1;
    double worst_cost = -1.0;
    for (Index i = 0; i < pts.rows(); ++i) {
      auto li = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
      if (sizes[li] > 1 && cost[static_cast<std::size_t>(i)] > worst_cost) {
        worst_cost = cost[static_cast<std::size_t>(i)];
        worst = i;
      }
    }
    auto wi = static_cast<std::size_t>(worst);
    --sizes[static_cast<std::size_t>(labels[wi])];
    labels[wi] = c;
    sizes[static_cast<std::size_t>(c)] = 1;
    cost[wi] = 0.0;
    centers.row(c) = pts.row(worst);
  }
  return std::accumulate(cost.begin(), cost.end(), 0.0);
}

void update_centers(const RowMatrix& pts, const std::vector<int>& labels, RowMatrix& centers) {
  const Index k = centers.rows();
  RowMatrix sums = RowMatrix::Zero(k, pts.cols());
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < pts.rows(); ++i) {
    auto l = labels[static_cast<std::size_t>(i)];
    sums.row(l) += pts.row(i);
    ++counts[static_cast<std::size_t>(l)];
  }
  for (Index c = 0; c < k; ++c)
    if (counts[static_cast<std::size_t>(c)] > 0)
      centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
}

RowMatrix plus_plus_init(const RowMatrix& pts, int k, rng::Stream& s) {
  const Index n = pts.rows();
  RowMatrix centers(k, pts.cols());
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  Index first = static_cast<Index>(s.below(static_cast<std::uint64_t>(n)));
  centers.row(0) = pts.row(first);
  chosen[static_cast<std::size_t>(first)] = 1;
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = sq_dist(pts, i, centers, 0);
  for (int c = 1; c < k; ++c) {
    double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    Index pick = -1;
    if (total > 0.0) {
      double target = s.uniform() * total, acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (acc > target && d2[static_cast<std::size_t>(i)] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0)
        for (Index i = n - 1; i >= 0; --i)
          if (d2[static_cast<std::size_t>(i)] > 0.0) {
            pick = i;
            break;
          }
    } else {
      for (Index i = 0; i < n; ++i)
        if (!chosen[static_cast<std::size_t>(i)]) {
          pick = i;
          break;
        }
    }
    chosen[static_cast<std::size_t>(pick)] = 1;
    centers.row(c) = pts.row(pick);
    for (Index i = 0; i < n; ++i)
      d2[static_cast<std::size_t>(i)] =
          std::min(d2[static_cast<std::size_t>(i)], sq_dist(pts, i, centers, c));
  }
  return centers;
}

LloydRun lloyd(const RowMatrix& pts, int k, rng::Stream& s, const KmeansOptions& opts) {
  LloydRun run;
  run.centers = plus_plus_init(pts, k, s);
  run.labels.assign(static_cast<std::size_t>(pts.rows()), 0);
  std::vector<double> cost(static_cast<std::size_t>(pts.rows()));
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iter; ++it) {
    assign(pts, run.centers, run.labels, cost);
    double cur = repair_empty(pts, run.centers, run.labels, cost);
    run.history.push_back(cur);
    if (cur == 0.0 || (std::isfinite(prev) && prev - cur <= opts.rel_tol * prev)) break;
    prev = cur;
    update_centers(pts, run.labels, run.centers);
  }
  update_centers(pts, run.labels, run.centers);
  run.wcss = 0.0;
  for (Index i = 0; i < pts.rows(); ++i)
    run.wcss += sq_dist(pts, i, run.centers, run.labels[static_cast<std::size_t>(i)]);
  return run;
}

}  // namespace

double rand_index(const LabeledPartition& a, const LabeledPartition& b) {
  if (a.n() != b.n()) throw ShapeError("partitions have different lengths");
  if (a.n() < 2) throw ShapeError("rand index needs n >= 2");
  const int ka = a.k(), kb = b.k();
  std::vector<std::int64_t> table(static_cast<std::size_t>(ka) * static_cast<std::size_t>(kb), 0);
  std::vector<std::int64_t> rows(static_cast<std::size_t>(ka), 0), cols(static_cast<std::size_t>(kb), 0);
  for (Index i = 0; i < a.n(); ++i) {
    auto ia = static_cast<std::size_t>(a[i]), ib = static_cast<std::size_t>(b[i]);
    ++table[ia * static_cast<std::size_t>(kb) + ib];
    ++rows[ia];
    ++cols[ib];
  }
  std::int64_t same_both = 0, same_a = 0, same_b = 0;
  for (auto c : table) same_both += pairs(c);
  for (auto c : rows) same_a += pairs(c);
  for (auto c : cols) same_b += pairs(c);
  std::int64_t total = pairs(a.n());
  // agreeing pairs = together in both + apart in both
  std::int64_t agree = total + 2 * same_both - same_a - same_b;
  return static_cast<double>(agree) / static_cast<double>(total);
}

MetricReport overall_rand(const LabeledPartition& est_x, const LabeledPartition& true_x,
                          const LabeledPartition& est_y, const LabeledPartition& true_y) {
  double rx = rand_index(est_x, true_x);
  double ry = rand_index(est_y, true_y);
  return {"rand_index", 0.5 * (rx + ry), std::make_pair(rx, ry)};
}

double jaccard_index(std::vector<Index> a, std::vector<Index> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Index> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  double inter = static_cast<double>(common.size());
  return inter / (static_cast<double>(a.size() + b.size()) - inter);
}

double jaccard_concordance(const Eigen::MatrixXd& embeds, const Eigen::MatrixXd& clean, int k) {
  if (embeds.rows() != clean.rows())
    throw ShapeError("embedding has " + std::to_string(embeds.rows()) + " rows, clean signal " +
                     std::to_string(clean.rows()));
  auto s = knn_self(clean, k);
  auto w = knn_self(embeds, k);
  double sum = 0.0;
  for (Index j = 0; j < clean.rows(); ++j) {
    std::vector<Index> a, b;
    for (int t = 0; t < k; ++t) {
      a.push_back(s(j, t));
      b.push_back(w(j, t));
    }
    sum += jaccard_index(std::move(a), std::move(b));
  }
  return sum / static_cast<double>(clean.rows());
}

KmeansResult kmeans_fit(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                        const KmeansOptions& opts) {
  check_k(k, points.rows());
  if (opts.restarts < 1 || opts.max_iter < 1) throw DomainError("k-means needs restarts, max_iter >= 1");
  RowMatrix pts = points;
  std::vector<LloydRun> runs(static_cast<std::size_t>(opts.restarts));
  parallel_for(
      opts.restarts,
      [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
          rng::Stream s(seed, static_cast<std::uint64_t>(r), rng::Purpose::kmeans);
          runs[static_cast<std::size_t>(r)] = lloyd(pts, k, s, opts);
        }
      },
      1);
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].wcss < runs[best].wcss) best = r;
  LloydRun& b = runs[best];
  return {LabeledPartition(std::move(b.labels), k), Eigen::MatrixXd(b.centers), b.wcss,
          static_cast<int>(best), std::move(b.history)};
}

LabeledPartition kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
  return kmeans_fit(points, k, seed).labels;
}

LabeledPartition hierarchical_cluster(const Eigen::MatrixXd& points, int k) {
  const Index n = points.rows();
  check_k(k, n);
  RowMatrix pts = points;
  Eigen::MatrixXd d(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) d(i, j) = sq_dist(pts, i, pts, j);
  std::vector<double> size(static_cast<std::size_t>(n), 1.0);
  std::vector<char> active(static_cast<std::size_t>(n), 1);

  struct Merge {
    Index a, b;
    double height;
  };
  std::vector<Merge> merges;
  std::vector<Index> chain;
  Index remaining = n;
  // Nearest-neighbor chain with Ward's Lance-Williams update.
  while (remaining > 1) {
    if (chain.empty()) {
      for (Index i = 0; i < n; ++i)
        if (active[static_cast<std::size_t>(i)]) {
          chain.push_back(i);
          break;
        }
    }
    Index a = chain.back();
    Index prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;
    Index nb = -1;
    double best = std::numeric_limits<double>::infinity();
    if (prev >= 0) {
      nb = prev;
      best = d(a, prev);
    }
    for (Index i = 0; i < n; ++i) {
      if (i == a || !active[static_cast<std::size_t>(i)]) continue;
      if (d(a, i) < best) {
        best = d(a, i);
        nb = i;
      }
    }
    if (nb != prev) {
      chain.push_back(nb);
      continue;
    }
    chain.pop_back();
    chain.pop_back();
    Index keep = std::min(a, nb), drop = std::max(a, nb);
    merges.push_back({keep, drop, best});
    double sa = size[static_cast<std::size_t>(a)], sb = size[static_cast<std::size_t>(nb)];
    for (Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)] || i == a || i == nb) continue;
      double si = size[static_cast<std::size_t>(i)];
      double v = ((sa + si) * d(a, i) + (sb + si) * d(nb, i) - si * best) / (sa + sb + si);
      d(keep, i) = d(i, keep) = v;
    }
    size[static_cast<std::size_t>(keep)] = sa + sb;
    active[static_cast<std::size_t>(drop)] = 0;
    --remaining;
  }

  std::stable_sort(merges.begin(), merges.end(),
                   [](const Merge& x, const Merge& y) { return x.height < y.height; });
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (Index m = 0; m < n - k; ++m) {
    Index ra = find(merges[static_cast<std::size_t>(m)].a), rb = find(merges[static_cast<std::size_t>(m)].b);
    parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::vector<int> raw(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = static_cast<int>(find(i));
  return LabeledPartition::from_labels(raw);
}

Eigen::MatrixXd pca_embed(const DataMatrix& d, int r) {
  const Index n = d.n(), p = d.p();
  if (r < 1 || r > std::min(n, p))
    throw IndexError("component count " + std::to_string(r) + " must be in [1, " +
                     std::to_string(std::min(n, p)) + "]");
  Eigen::MatrixXd xc = d.values().rowwise() - d.values().colwise().mean();
  Eigen::MatrixXd scores;
  if (n <= p) {
    linalg::SymEigen eig = linalg::sym_eigen_top(linalg::gram_rows(xc), r);
    scores = eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  } else {
    Eigen::MatrixXd xt = xc.transpose();
    linalg::SymEigen eig = linalg::sym_eigen_top(linalg::gram_rows(xt), r);
    scores = xc * eig.vectors;
  }
  linalg::fix_signs(scores);
  return scores;
}

}  // namespace duo
