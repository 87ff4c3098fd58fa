#include "duo/linalg.hpp"

#include "duo/error.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

namespace duo::linalg {

namespace {

void check_square(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols())
    throw ShapeError("symmetric eigensolver needs a square matrix, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

// dsyevr on the lower triangle; returns ascending values (and vectors when wanted).
lapack_int syevr(const Eigen::MatrixXd& a, Eigen::Index count, bool vectors, Eigen::VectorXd& w,
                 Eigen::MatrixXd& z) {
  auto n = static_cast<lapack_int>(a.rows());
  Eigen::MatrixXd work = a;
  w.resize(n);
  if (vectors) z.resize(n, count);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max<Eigen::Index>(count, 1)));
  char range = count == a.rows() ? 'A' : 'I';
  lapack_int il = n - static_cast<lapack_int>(count) + 1, iu = n, m = 0;
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', range, 'L', n,
                                   work.data(), n, 0.0, 0.0, il, iu, 0.0, &m, w.data(),
                                   vectors ? z.data() : nullptr, vectors ? n : 1, isuppz.data());
  if (info != 0)
    throw ConvergenceError("symmetric eigensolver failed (dsyevr info=" + std::to_string(info) +
                           ")");
  if (m != static_cast<lapack_int>(count))
    throw ConvergenceError("symmetric eigensolver returned " + std::to_string(m) + " of " +
                           std::to_string(count) + " eigenvalues");
  w.conservativeResize(m);
  return m;
}

}  // namespace

SymEigen sym_eigen_top(const Eigen::MatrixXd& a, Eigen::Index count) {
  check_square(a);
  if (count < 0 || count > a.rows()) throw IndexError("eigenpair count out of range");
  SymEigen out;
  if (count == 0) {
    out.values.resize(0);
    out.vectors.resize(a.rows(), 0);
    return out;
  }
  Eigen::VectorXd w;
  Eigen::MatrixXd z;
  syevr(a, count, true, w, z);
  out.values = w.reverse();
  out.vectors = z.rowwise().reverse();
  return out;
}

SymEigen sym_eigen(const Eigen::MatrixXd& a) { return sym_eigen_top(a, a.rows()); }

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a, Eigen::Index count) {
  check_square(a);
  if (count < 0) count = a.rows();
  if (count > a.rows()) throw IndexError("eigenvalue count out of range");
  if (count == 0) return Eigen::VectorXd(0);
  Eigen::VectorXd w;
  Eigen::MatrixXd z;
  syevr(a, count, false, w, z);
  return w.reverse();
}

Svd svd_thin(const Eigen::MatrixXd& a) {
  const auto m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  Svd out;
  out.s.resize(k);
  out.u.resize(m, k);
  Eigen::MatrixXd vt(k, n), work = a;
  if (k == 0) {
    out.v.resize(n, 0);
    return out;
  }
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, out.s.data(),
                                   out.u.data(), m, vt.data(), k);
  if (info != 0)
    throw ConvergenceError("SVD failed (dgesdd info=" + std::to_string(info) + ")");
  out.v = vt.transpose();
  return out;
}

Eigen::VectorXd fix_signs(Eigen::MatrixXd& columns) {
  Eigen::VectorXd signs = Eigen::VectorXd::Ones(columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < columns.rows(); ++i) {
      double v = std::abs(columns(i, j));
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (columns.rows() > 0 && columns(best, j) < 0) {
      columns.col(j) = -columns.col(j);
      signs(j) = -1.0;
    }
  }
  return signs;
}

Eigen::MatrixXd gram_rows(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(a.rows(), a.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(a);
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

}  // namespace duo::linalg
