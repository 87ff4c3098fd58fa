#include "duo/experiments.hpp"

#include "duo/error.hpp"
#include "duo/rng.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

namespace duo {

namespace {

MetricReport score_pair(const Eigen::MatrixXd& ex, const Eigen::MatrixXd& ey,
                        const std::vector<int>& lx, const std::vector<int>& ly,
                        std::uint64_t seed) {
  auto tx = LabeledPartition::from_labels(lx);
  auto ty = LabeledPartition::from_labels(ly);
  auto cx = kmeans(ex, tx.k(), rng::derive_seed(seed, 0));
  auto cy = kmeans(ey, ty.k(), rng::derive_seed(seed, 1));
  return overall_rand(cx, tx, cy, ty);
}

}  // namespace

Eigen::MatrixXd joint_pca(const DataMatrix& x, const DataMatrix& y, int r) {
  if (x.p() != y.p()) throw ShapeError("feature counts differ");
  Eigen::MatrixXd z(x.n() + y.n(), x.p());
  z << x.values(), y.values();
  return pca_embed(DataMatrix(std::move(z)), r);
}

MethodScores clustering_replicate(const ClusteringStudy& study, double tau, std::uint64_t seed) {
  if (study.setting != 1 && study.setting != 2) throw UnsupportedKind("setting must be 1 or 2");
  ClusterPair pair = study.setting == 1
                         ? sample_setting1(study.n1, study.n2, study.p, tau, study.sigma1_sq,
                                           study.sigma2_sq, seed)
                         : sample_setting2(study.n1, study.n2, study.p, tau, study.sigma1_sq,
                                           study.sigma2_sq, seed);
  DataMatrix x = center_columns(pair.x), y = center_columns(pair.y);
  std::uint64_t cseed = rng::derive_seed(seed, 7);

  RunConfig cfg;
  cfg.omega = study.omega;
  cfg.gamma1 = cfg.gamma2 = default_embedding_gamma(study.r);
  cfg.skip_screening = true;
  RunResult res = run(x, y, cfg);

  MethodScores out;
  out.prop = score_pair(res.embedding->ex, res.embedding->ey, pair.labels_x, pair.labels_y, cseed).value;
  out.pca = score_pair(pca_embed(x, study.r), pca_embed(y, study.r), pair.labels_x, pair.labels_y,
                       cseed)
                .value;
  Eigen::MatrixXd j = joint_pca(x, y, study.r);
  out.jpca = score_pair(j.topRows(x.n()), j.bottomRows(y.n()), pair.labels_x, pair.labels_y, cseed)
                 .value;
  return out;
}

MethodScores manifold_replicate(const ManifoldStudy& study, std::uint64_t seed) {
  TorusPair pair =
      sample_torus_pair(study.n1, study.n2, study.p, study.sigma1_sq, study.sigma2_sq, seed);
  DataMatrix x = center_columns(pair.x), y = center_columns(pair.y);
  Eigen::MatrixXd clean = study.torus_coords_only ? Eigen::MatrixXd(pair.y_clean.values().leftCols(3))
                                                  : pair.y_clean.values();

  RunConfig cfg;
  cfg.omega = study.omega;
  cfg.gamma1 = cfg.gamma2 = default_embedding_gamma(study.r);
  cfg.skip_screening = true;
  RunResult res = run(x, y, cfg);

  MethodScores out;
  out.prop = jaccard_concordance(res.embedding->ey, clean, study.k);
  out.pca = jaccard_concordance(pca_embed(y, study.r), clean, study.k);
  out.jpca = jaccard_concordance(joint_pca(x, y, study.r).bottomRows(y.n()), clean, study.k);
  return out;
}

void sort_rows(std::vector<BenchRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.method, a.tau_or_n, a.rep, a.metric) <
           std::tie(b.method, b.tau_or_n, b.rep, b.metric);
  });
}

void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "method,tau_or_n,rep,metric,value\n";
  for (const auto& r : rows)
    out << r.method << ',' << format_double(r.tau_or_n) << ',' << r.rep << ',' << r.metric << ','
        << format_double(r.value) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace duo
