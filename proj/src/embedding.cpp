#include "duo/embedding.hpp"

#include "duo/error.hpp"
#include "duo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace duo {

namespace {

// Orthonormalizes the columns of q in order, keeping each column's direction.
void orthonormalize(Eigen::MatrixXd& q) {
  if (q.cols() == 0) return;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  Eigen::MatrixXd thin = qr.householderQ() * Eigen::MatrixXd::Identity(q.rows(), q.cols());
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0) thin.col(j) = -thin.col(j);
  q = std::move(thin);
}

// Orthonormal columns spanning the complement of `basis`, `count` of them.
Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& basis, Index rows, Index count) {
  if (count == 0) return Eigen::MatrixXd(rows, 0);
  if (basis.cols() == 0) return Eigen::MatrixXd::Identity(rows, count);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  Eigen::MatrixXd full = qr.householderQ();
  return full.middleCols(basis.cols(), count);
}

}  // namespace

IndexSet index_range(int first, int last) {
  IndexSet out;
  for (int i = first; i <= last; ++i) out.push_back(i);
  return out;
}

IndexSet default_embedding_gamma(int r) { return index_range(2, r + 1); }

ScaledSvd duo_svd(const KernelMatrix& k, Index rank) {
  const Index n1 = k.n1(), n2 = k.n2(), m = std::min(n1, n2);
  if (!k.k.allFinite()) throw DomainError("kernel matrix has non-finite entries");
  if (rank < 0 || rank > m) throw IndexError("requested rank exceeds min(n1, n2)");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
  const bool left_small = n1 <= n2;

  Eigen::MatrixXd gram = left_small ? linalg::gram_rows(k.k) : linalg::gram_rows(k.k.transpose().eval());
  gram *= scale * scale;
  linalg::SymEigen eig = linalg::sym_eigen_top(gram, rank);

  ScaledSvd out;
  out.n1 = n1;
  out.n2 = n2;
  out.s = eig.values.cwiseMax(0.0).cwiseSqrt();
  Index nonzero = 0;
  const double cut = rank > 0 ? kZeroSingularRel * out.s(0) : 0.0;
  while (nonzero < rank && out.s(nonzero) > cut) ++nonzero;
  out.s.tail(rank - nonzero).setZero();

  Eigen::MatrixXd& primary = left_small ? out.u : out.v;
  Eigen::MatrixXd& other = left_small ? out.v : out.u;
  primary = std::move(eig.vectors);
  Eigen::MatrixXd recovered(left_small ? n2 : n1, rank);
  if (nonzero > 0) {
    Eigen::MatrixXd block = left_small ? Eigen::MatrixXd(k.k.transpose() * primary.leftCols(nonzero))
                                       : Eigen::MatrixXd(k.k * primary.leftCols(nonzero));
    block *= scale;
    for (Index j = 0; j < nonzero; ++j) block.col(j) /= out.s(j);
    orthonormalize(block);
    recovered.leftCols(nonzero) = block;
  }
  recovered.rightCols(rank - nonzero) =
      complete_basis(recovered.leftCols(nonzero), recovered.rows(), rank - nonzero);
  other = std::move(recovered);

  Eigen::VectorXd signs = linalg::fix_signs(out.u);
  out.v = out.v * signs.asDiagonal();
  return out;
}

ScaledSvd duo_svd(const KernelMatrix& k) {
  if (!k.k.allFinite()) throw DomainError("kernel matrix has non-finite entries");
  const double scale = 1.0 / std::sqrt(static_cast<double>(k.n1()) * static_cast<double>(k.n2()));
  linalg::Svd svd = linalg::svd_thin(scale * k.k);
  ScaledSvd out;
  out.n1 = k.n1();
  out.n2 = k.n2();
  out.s = std::move(svd.s);
  const double cut = out.s.size() > 0 ? kZeroSingularRel * out.s(0) : 0.0;
  for (Index i = 0; i < out.s.size(); ++i)
    if (out.s(i) <= cut) out.s(i) = 0.0;
  out.u = std::move(svd.u);
  out.v = std::move(svd.v);
  Eigen::VectorXd signs = linalg::fix_signs(out.u);
  out.v = out.v * signs.asDiagonal();
  return out;
}

JointEmbedding select_embeddings(const ScaledSvd& svd, const IndexSet& gamma1,
                                 const IndexSet& gamma2) {
  const Index m = svd.s.size();
  auto check = [&](const IndexSet& g) {
    for (int i : g) {
      if (i < 1 || i > m)
        throw IndexError("component index " + std::to_string(i) + " outside 1.." +
                         std::to_string(m));
      if (svd.s(i - 1) <= kZeroSingularRel * svd.s(0))
        throw IndexError("component " + std::to_string(i) + " has a zero singular value");
    }
  };
  check(gamma1);
  check(gamma2);

  JointEmbedding e;
  e.gamma1 = gamma1;
  e.gamma2 = gamma2;
  const double r1 = std::sqrt(static_cast<double>(svd.n1));
  const double r2 = std::sqrt(static_cast<double>(svd.n2));
  e.ex.resize(svd.n1, static_cast<Index>(gamma1.size()));
  e.ey.resize(svd.n2, static_cast<Index>(gamma2.size()));
  e.s1.resize(static_cast<Index>(gamma1.size()));
  e.s2.resize(static_cast<Index>(gamma2.size()));
  for (std::size_t c = 0; c < gamma1.size(); ++c) {
    Index i = gamma1[c] - 1, col = static_cast<Index>(c);
    e.s1(col) = svd.s(i);
    e.ex.col(col) = r1 * svd.s(i) * svd.u.col(i);
  }
  for (std::size_t c = 0; c < gamma2.size(); ++c) {
    Index i = gamma2[c] - 1, col = static_cast<Index>(c);
    e.s2(col) = svd.s(i);
    e.ey.col(col) = r2 * svd.s(i) * svd.v.col(i);
  }
  return e;
}

ExtensionContext::ExtensionContext(DataMatrix landmarks_x, DataMatrix landmarks_y, Bandwidth h,
                                   ScaledSvd svd)
    : x_(std::move(landmarks_x)), y_(std::move(landmarks_y)), h_(h), svd_(std::move(svd)) {
  if (x_.p() != y_.p()) throw ShapeError("landmark feature counts differ");
  if (svd_.n1 != x_.n() || svd_.n2 != y_.n() || svd_.u.rows() != x_.n() ||
      svd_.v.rows() != y_.n())
    throw ShapeError("SVD dimensions do not match the landmarks");
}

namespace {

double sq_dist(const Eigen::VectorXd& a, const Eigen::MatrixXd& rows, Index j) {
  return (rows.row(j).transpose() - a).squaredNorm();
}

void check_point(const Eigen::VectorXd& a, const ExtensionContext& ctx) {
  if (a.size() != ctx.landmarks_x().p())
    throw ShapeError("point has " + std::to_string(a.size()) + " coordinates, expected " +
                     std::to_string(ctx.landmarks_x().p()));
}

}  // namespace

double khat(Side side, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
            const ExtensionContext& ctx) {
  check_point(a, ctx);
  check_point(b, ctx);
  const Eigen::MatrixXd& lm = side == Side::left ? ctx.landmarks_y().values()
                                                 : ctx.landmarks_x().values();
  const double h = ctx.h().h;
  double sum = 0.0;
  for (Index s = 0; s < lm.rows(); ++s)
    sum += kernel_value(sq_dist(a, lm, s), h) * kernel_value(sq_dist(b, lm, s), h);
  return sum / static_cast<double>(lm.rows());
}

Eigen::MatrixXd extend_points(Side side, const Eigen::MatrixXd& points, const IndexSet& components,
                              const ExtensionContext& ctx) {
  const ScaledSvd& svd = ctx.svd();
  if (points.cols() != ctx.landmarks_x().p())
    throw ShapeError("points have " + std::to_string(points.cols()) + " coordinates, expected " +
                     std::to_string(ctx.landmarks_x().p()));
  for (int i : components) {
    if (i < 1 || i > svd.s.size())
      throw IndexError("component index " + std::to_string(i) + " out of range");
    if (svd.s(i - 1) <= kZeroSingularRel * svd.s(0))
      throw ZeroSingularValue("component " + std::to_string(i) + " has a zero singular value");
  }
  const bool left = side == Side::left;
  const DataMatrix& other = left ? ctx.landmarks_y() : ctx.landmarks_x();
  const double n_other = static_cast<double>(left ? svd.n2 : svd.n1);
  const Eigen::MatrixXd& partner = left ? svd.v : svd.u;

  DistanceMatrix d = cross_sq_distances(points, other.values());
  Eigen::MatrixXd kv = d.d.unaryExpr([h = ctx.h().h](double v) { return kernel_value(v, h); });
  Eigen::MatrixXd out(points.rows(), static_cast<Index>(components.size()));
  // K^T u_i = sqrt(n1 n2) s_i v_i turns the khat double sum into a single pass over the
  // partner singular vector; its error grows like s_1/s_i instead of (s_1/s_i)^2.
  for (std::size_t c = 0; c < components.size(); ++c) {
    Index i = components[c] - 1;
    out.col(static_cast<Index>(c)) = kv * partner.col(i) / (svd.s(i) * std::sqrt(n_other));
  }
  return out;
}

double extend(Side side, const Eigen::VectorXd& point, int i, const ExtensionContext& ctx) {
  check_point(point, ctx);
  return extend_points(side, point.transpose(), {i}, ctx)(0, 0);
}

}  // namespace duo
