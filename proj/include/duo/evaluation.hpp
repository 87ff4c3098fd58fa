#pragma once

#include "duo/data_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace duo {

struct MetricReport {
  std::string name;
  double value = 0.0;
  std::optional<std::pair<double, double>> per_dataset;
};

double rand_index(const LabeledPartition& a, const LabeledPartition& b);

MetricReport overall_rand(const LabeledPartition& est_x, const LabeledPartition& true_x,
                          const LabeledPartition& est_y, const LabeledPartition& true_y);

inline constexpr int kDefaultJaccardK = 50;

// |a ∩ b| / |a ∪ b| for two index sets without repeats.
double jaccard_index(std::vector<Index> a, std::vector<Index> b);

double jaccard_concordance(const Eigen::MatrixXd& embeds, const Eigen::MatrixXd& clean,
                           int k = kDefaultJaccardK);
inline double jaccard_concordance(const Eigen::MatrixXd& embeds, const DataMatrix& clean,
                                  int k = kDefaultJaccardK) {
  return jaccard_concordance(embeds, clean.values(), k);
}

struct KmeansOptions {
  int restarts = 20;
  int max_iter = 300;
  double rel_tol = 1e-6;
};

struct KmeansResult {
  LabeledPartition labels;
  Eigen::MatrixXd centers;
  double wcss = 0.0;
  int best_restart = 0;
  std::vector<double> history;  // WCSS after each Lloyd step of the best restart
};

KmeansResult kmeans_fit(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                        const KmeansOptions& opts = {});
LabeledPartition kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed);

LabeledPartition hierarchical_cluster(const Eigen::MatrixXd& points, int k);

Eigen::MatrixXd pca_embed(const DataMatrix& d, int r);

}  // namespace duo
