#pragma once

#include "duo/data_model.hpp"
#include "duo/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace duo {

struct GmmSpec {
  Index n = 0;
  Index p = 0;
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> centers;
  double cov_scale = 9.0;  // cluster covariance cov_scale * I
  int k() const { return static_cast<int>(weights.size()); }
};

struct GmmSample {
  Eigen::MatrixXd values;
  std::vector<int> labels;
};

GmmSample sample_gmm(const GmmSpec& spec, rng::Stream& label_stream, rng::Stream& signal_stream);

struct ClusterPair {
  DataMatrix x, y;
  std::vector<int> labels_x, labels_y;
  DataMatrix x_clean, y_clean;
};

struct TorusPair {
  DataMatrix x, y, y_clean;
  DataMatrix x_clean;
  double theta = 0.0;
};

struct DataPair {
  DataMatrix x, y;
};

enum class NegativeControl { klein_vs_line, torus_vs_noise };

NegativeControl parse_negative_control(const std::string& name);
std::string to_string(NegativeControl kind);

ClusterPair sample_setting1(Index n1, Index n2, Index p, double tau, double sigma1_sq,
                            double sigma2_sq, std::uint64_t seed);
ClusterPair sample_setting2(Index n1, Index n2, Index p, double tau, double sigma1_sq,
                            double sigma2_sq, std::uint64_t seed);
inline ClusterPair sample_setting1(Index n1, Index n2, Index p, double tau, std::uint64_t seed) {
  return sample_setting1(n1, n2, p, tau, 0.25, 1.0, seed);
}
inline ClusterPair sample_setting2(Index n1, Index n2, Index p, double tau, std::uint64_t seed) {
  return sample_setting2(n1, n2, p, tau, 0.25, 1.0, seed);
}

// theta <= 0 selects 0.2 * sqrt(n2).
TorusPair sample_torus_pair(Index n1, Index n2, Index p, double sigma1_sq, double sigma2_sq,
                            std::uint64_t seed, double theta = 0.0);

DataPair sample_pure_noise_pair(Index n1, Index n2, Index p, double sigma1_sq, double sigma2_sq,
                                std::uint64_t seed);

DataPair sample_negative_control(NegativeControl kind, Index n1, Index n2, std::uint64_t seed);

// n points uniform on the circle of the given radius in R^2.
Eigen::MatrixXd sample_circle(Index n, double radius, rng::Stream& s);

// Points on a torus in R^3: (R + r cos u) cos v, (R + r cos u) sin v, r sin u.
Eigen::MatrixXd sample_torus(Index n, double major, double minor, rng::Stream& s);

// Figure-8 Klein bottle immersion lifted to R^4.
Eigen::MatrixXd sample_klein_bottle(Index n, rng::Stream& s);

}  // namespace duo
