#include "duo/screening.hpp"

#include "duo/error.hpp"
#include "duo/linalg.hpp"
#include "duo/neighbors.hpp"

#include <algorithm>
#include <string>

namespace duo {

IndexSet default_screen_gamma() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

double lower_median(std::vector<double> v) {
  if (v.empty()) throw ShapeError("median of an empty list");
  auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

Eigen::MatrixXd joint_spectral_coords(const Eigen::MatrixXd& f, const IndexSet& gamma) {
  if (f.rows() != f.cols()) throw ShapeError("merged kernel must be square");
  int top = 0;
  for (int g : gamma) {
    if (g < 1 || g > f.rows())
      throw IndexError("eigenvector index " + std::to_string(g) + " outside 1.." +
                       std::to_string(f.rows()));
    top = std::max(top, g);
  }
  linalg::SymEigen eig = linalg::sym_eigen_top(f, top);
  Eigen::MatrixXd coords(f.rows(), static_cast<Index>(gamma.size()));
  for (std::size_t c = 0; c < gamma.size(); ++c)
    coords.col(static_cast<Index>(c)) = eig.vectors.col(gamma[c] - 1);
  linalg::fix_signs(coords);
  return coords;
}

std::vector<double> knn_purity(const Eigen::MatrixXd& coords, std::span<const int> labels, int k) {
  if (static_cast<Index>(labels.size()) != coords.rows())
    throw ShapeError("label count " + std::to_string(labels.size()) + " does not match " +
                     std::to_string(coords.rows()) + " points");
  for (int l : labels)
    if (l != 0 && l != 1) throw ShapeError("purity labels must be 0 or 1");
  auto nn = knn_self(coords, k);
  std::vector<double> purity(labels.size());
  for (Index i = 0; i < coords.rows(); ++i) {
    int same = 0;
    for (int t = 0; t < k; ++t) same += labels[static_cast<std::size_t>(nn(i, t))] == labels[static_cast<std::size_t>(i)];
    purity[static_cast<std::size_t>(i)] = static_cast<double>(same) / k;
  }
  return purity;
}

AlignabilityReport screen_alignability(const DataMatrix& x, const DataMatrix& y, double omega,
                                       int k, const IndexSet& gamma) {
  MergedKernel f = merged_kernel(x, y, omega);
  Eigen::MatrixXd coords = joint_spectral_coords(f.f, gamma);
  std::vector<int> labels(static_cast<std::size_t>(f.n1 + f.n2), 1);
  std::fill(labels.begin(), labels.begin() + f.n1, 0);

  AlignabilityReport r;
  r.purities = knn_purity(coords, labels, k);
  r.median_purity = lower_median(r.purities);
  r.alignable = r.median_purity < 1.0;
  r.k = k;
  r.gamma = gamma;
  return r;
}

}  // namespace duo
