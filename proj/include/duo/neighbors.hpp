#pragma once

#include <Eigen/Dense>

#include <vector>

namespace duo {

// k nearest rows of `points` for every row, self excluded, ordered by
// (squared distance, index). Row i of the result lists neighbor indices.
Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> knn_self(const Eigen::MatrixXd& points,
                                                                     int k);

}  // namespace duo
