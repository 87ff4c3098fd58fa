#pragma once

#include "duo/data_model.hpp"
#include "duo/rng.hpp"

#include <Eigen/Dense>

namespace duo::test {

inline Eigen::MatrixXd gaussian(Index rows, Index cols, std::uint64_t seed, double sd = 1.0) {
  rng::Stream s(seed, 99, rng::Purpose::misc);
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = sd * s.normal();
  return m;
}

inline Eigen::MatrixXd random_orthogonal(Index p, std::uint64_t seed) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(p, p, seed));
  return qr.householderQ();
}

inline double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace duo::test
