#pragma once

#include <Eigen/Dense>

namespace duo::linalg {

struct SymEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns match values
};

// Leading `count` eigenpairs of a symmetric matrix (count <= rows), descending.
// Only the lower triangle is read. Throws ConvergenceError on LAPACK failure.
SymEigen sym_eigen_top(const Eigen::MatrixXd& a, Eigen::Index count);
SymEigen sym_eigen(const Eigen::MatrixXd& a);

// Eigenvalues only, descending; count < 0 means all.
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a, Eigen::Index count = -1);

struct Svd {
  Eigen::VectorXd s;  // descending
  Eigen::MatrixXd u;  // rows x min(rows, cols)
  Eigen::MatrixXd v;  // cols x min(rows, cols)
};

// Thin SVD via dgesdd. Throws ConvergenceError on LAPACK failure.
Svd svd_thin(const Eigen::MatrixXd& a);

// Flips each column so that its largest-|entry| is positive (ties: smallest index).
// Returns the applied signs.
Eigen::VectorXd fix_signs(Eigen::MatrixXd& columns);

// a * a^T, symmetric by construction.
Eigen::MatrixXd gram_rows(const Eigen::MatrixXd& a);

}  // namespace duo::linalg
