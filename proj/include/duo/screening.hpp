#pragma once

#include "duo/kernel.hpp"

#include <span>

namespace duo {

struct AlignabilityReport {
  std::vector<double> purities;
  double median_purity = 0.0;
  bool alignable = true;
  int k = 30;
  IndexSet gamma;
};

inline constexpr int kDefaultScreenK = 30;
IndexSet default_screen_gamma();  // {1..10}

Eigen::MatrixXd joint_spectral_coords(const Eigen::MatrixXd& f, const IndexSet& gamma);

std::vector<double> knn_purity(const Eigen::MatrixXd& coords, std::span<const int> labels, int k);

AlignabilityReport screen_alignability(const DataMatrix& x, const DataMatrix& y, double omega,
                                       int k = kDefaultScreenK,
                                       const IndexSet& gamma = default_screen_gamma());

double lower_median(std::vector<double> v);

}  // namespace duo
