#pragma once

#include "duo/kernel.hpp"

namespace duo {

// Thin SVD of K / sqrt(n1 n2).
struct ScaledSvd {
  Eigen::VectorXd s;
  Eigen::MatrixXd u;  // n1 x m
  Eigen::MatrixXd v;  // n2 x m
  Index n1 = 0, n2 = 0;
};

struct JointEmbedding {
  IndexSet gamma1, gamma2;
  Eigen::MatrixXd ex, ey;
  Eigen::VectorXd s1, s2;  // singular values at gamma1 / gamma2
};


ScaledSvd duo_svd(const KernelMatrix& k);
// Only the leading `rank` triplets, from the smaller Gram eigenproblem.
ScaledSvd duo_svd(const KernelMatrix& k, Index rank);

JointEmbedding select_embeddings(const ScaledSvd& svd, const IndexSet& gamma1,
                                 const IndexSet& gamma2);

IndexSet default_embedding_gamma(int r);  // {2..r+1}
IndexSet index_range(int first, int last);

enum class Side { left, right };

class ExtensionContext {
 public:
  ExtensionContext(DataMatrix landmarks_x, DataMatrix landmarks_y, Bandwidth h, ScaledSvd svd);

  const DataMatrix& landmarks_x() const { return x_; }
  const DataMatrix& landmarks_y() const { return y_; }
  const Bandwidth& h() const { return h_; }
  const ScaledSvd& svd() const { return svd_; }

 private:
  DataMatrix x_, y_;
  Bandwidth h_;
  ScaledSvd svd_;
};

double khat(Side side, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
            const ExtensionContext& ctx);

// Nystrom extension of component i (1-based) evaluated at a feature-space point.
double extend(Side side, const Eigen::VectorXd& point, int i, const ExtensionContext& ctx);

// Rows of `points` extended at every component in `components`.
Eigen::MatrixXd extend_points(Side side, const Eigen::MatrixXd& points, const IndexSet& components,
                              const ExtensionContext& ctx);

}  // namespace duo
