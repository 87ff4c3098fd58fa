#pragma once

#include "duo/kernel.hpp"

#include <cstdint>
#include <span>

namespace duo {

struct MpLaw {
  double phi = 1.0;
  double gamma_minus = 0.0;
  double gamma_plus = 4.0;
};

MpLaw mp_edges(double phi);

// Nonzero eigenvalues of K K^T / (p sqrt(n1 n2)), descending.
Eigen::VectorXd scaled_bulk_eigenvalues(const KernelMatrix& k, Index p);

// Same spectrum rescaled with the plug-in noise normalization
// h^2 sqrt(n1 n2) exp(2(m1+m2)/h) / (4 p s1^2 s2^2), where m is the mean
// squared row norm of each (centered) dataset and s^2 = m / p.
Eigen::VectorXd calibrated_bulk_eigenvalues(const KernelMatrix& k, const DataMatrix& x,
                                            const DataMatrix& y);

struct NoiseRegimeReport {
  Eigen::VectorXd w;
  std::vector<double> gap_ratios;  // w_i / w_{i+1}, i = k_skip, ... while w_{i+1} >= bulk_median
  double bulk_median = 0.0;
  bool noise_dominated = false;
  int k_skip = 5;
  double c1 = 0.1;
  double c2 = 0.01;
};

inline constexpr int kDefaultKSkip = 5;
inline constexpr double kDefaultC1 = 0.1;
inline constexpr double kDefaultC2 = 0.01;

NoiseRegimeReport detect_noise_regime(const Eigen::VectorXd& w, int k_skip = kDefaultKSkip,
                                      double c1 = kDefaultC1, double c2 = kDefaultC2);

struct QuantileTable {
  std::vector<double> levels;
  std::vector<double> values;
  std::vector<double> pooled;  // sorted pooled eigenvalues
};

const std::vector<double>& oracle_levels();

QuantileTable free_conv_quantiles_mc(Index n1, Index n2, Index p, int reps, std::uint64_t seed);

// sup |F_a - F_b| between two empirical CDFs.
double ks_distance(std::span<const double> a, std::span<const double> b);

}  // namespace duo
