#include "duo/neighbors.hpp"

#include "duo/error.hpp"
#include "duo/parallel.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace duo {

Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> knn_self(const Eigen::MatrixXd& points,
                                                                     int k) {
  const Eigen::Index m = points.rows();
  if (k < 1 || k >= m)
    throw InvalidK("neighbor count " + std::to_string(k) + " must be in [1, " +
                   std::to_string(m - 1) + "]");
  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> out(m, k);
  // Row-major copy so each point is contiguous.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> pts = points;
  const Eigen::Index q = points.cols();

  parallel_for(m, [&](std::int64_t begin, std::int64_t end) {
    std::vector<std::pair<double, Eigen::Index>> cand(static_cast<std::size_t>(m - 1));
    for (std::int64_t i = begin; i < end; ++i) {
      const double* pi = pts.row(i).data();
      std::size_t c = 0;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (j == i) continue;
        const double* pj = pts.row(j).data();
        double d = 0.0;
        for (Eigen::Index f = 0; f < q; ++f) {
          double t = pi[f] - pj[f];
          d += t * t;
        }
        cand[c++] = {d, j};
      }
      auto kth = cand.begin() + (k - 1);
      std::nth_element(cand.begin(), kth, cand.end());
      std::sort(cand.begin(), kth + 1);
      for (int t = 0; t < k; ++t) out(i, t) = cand[static_cast<std::size_t>(t)].second;
    }
  });
  return out;
}

}  // namespace duo
