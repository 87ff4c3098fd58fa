#pragma once

#include "duo/evaluation.hpp"
#include "duo/pipeline.hpp"
#include "duo/simulation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace duo {

// One replicate of the simulation studies: scores of the proposed embedding
// and the two PCA baselines.
struct MethodScores {
  double prop = 0.0;
  double pca = 0.0;
  double jpca = 0.0;
};

struct ClusteringStudy {
  int setting = 1;  // 1 or 2
  Index n1 = 600, n2 = 600, p = 800;
  int r = 6;
  double sigma1_sq = 0.25, sigma2_sq = 1.0;
  double omega = kDefaultOmega;
};

// Overall Rand index after k-means on each embedding.
MethodScores clustering_replicate(const ClusteringStudy& study, double tau, std::uint64_t seed);

struct ManifoldStudy {
  Index n1 = 600, n2 = 600, p = 800;
  int r = 3;
  int k = kDefaultJaccardK;
  double sigma1_sq = 0.16, sigma2_sq = 1.0;
  double omega = kDefaultOmega;
  bool torus_coords_only = false;  // score against the 3 torus coordinates of y0
};

// Jaccard concordance of the y-embeddings against the clean y signal.
MethodScores manifold_replicate(const ManifoldStudy& study, std::uint64_t seed);

// Stacks x over y and returns the rows' joint PCA scores.
Eigen::MatrixXd joint_pca(const DataMatrix& x, const DataMatrix& y, int r);

struct BenchRow {
  std::string method;
  double tau_or_n = 0.0;
  int rep = 0;
  std::string metric;
  double value = 0.0;
};

// Sorted by (method, tau_or_n, rep, metric).
void sort_rows(std::vector<BenchRow>& rows);
void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows);

}  // namespace duo
