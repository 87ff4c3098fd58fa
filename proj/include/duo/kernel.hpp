#pragma once

#include "duo/data_model.hpp"

#include <cstdint>
#include <vector>

namespace duo {

using IndexSet = std::vector<int>;  // 1-based component indices

struct DistanceMatrix {
  Eigen::MatrixXd d;  // n1 x n2 squared Euclidean distances
  Index n1() const { return d.rows(); }
  Index n2() const { return d.cols(); }
};

enum class BandwidthSource { fixed, percentile, resampled };

struct Bandwidth {
  double h = 1.0;
  double omega = 0.5;
  BandwidthSource source = BandwidthSource::percentile;
};

struct KernelMatrix {
  Eigen::MatrixXd k;
  double h = 1.0;
  Index n1() const { return k.rows(); }
  Index n2() const { return k.cols(); }
};

inline constexpr double kDefaultOmega = 0.5;
// Singular values at or below this fraction of s_1 count as zero.
inline constexpr double kZeroSingularRel = 1e-12;

DistanceMatrix cross_sq_distances(const DataMatrix& x, const DataMatrix& y);
DistanceMatrix cross_sq_distances(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// ceil(omega * count)-th order statistic; zero falls back to the smallest positive value.
double percentile_bandwidth(std::vector<double> values, double omega);

Bandwidth select_bandwidth(const DistanceMatrix& d, double omega);
Bandwidth fixed_bandwidth(double h);

double kernel_value(double d, double h);
KernelMatrix build_duo_kernel(const DistanceMatrix& d, const Bandwidth& h);

struct MergedKernel {
  Eigen::MatrixXd f;  // (n1+n2) square, x rows first
  double q = 1.0;
  Index n1 = 0, n2 = 0;
};

MergedKernel merged_kernel(const DataMatrix& x, const DataMatrix& y, double omega);

struct AutoOmegaResult {
  Bandwidth bandwidth;
  std::vector<double> grid;
  std::vector<double> mean_scores;
};

AutoOmegaResult auto_omega_scores(const DataMatrix& x, const DataMatrix& y,
                                  const std::vector<double>& grid, int r, int b,
                                  std::uint64_t seed);
Bandwidth auto_omega(const DataMatrix& x, const DataMatrix& y, const std::vector<double>& grid,
                     int r, int b, std::uint64_t seed);

const std::vector<double>& default_omega_grid();

}  // namespace duo
