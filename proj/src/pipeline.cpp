#include "duo/pipeline.hpp"

#include "duo/error.hpp"
#include "duo/serialize.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace duo {

namespace {

void check_index_set(const IndexSet& g, Index limit, const char* name) {
  std::set<int> seen;
  for (int i : g) {
    if (i < 1 || i > limit)
      throw ConfigError(std::string(name) + " index " + std::to_string(i) + " outside 1.." +
                        std::to_string(limit));
    if (!seen.insert(i).second)
      throw ConfigError(std::string(name) + " repeats index " + std::to_string(i));
  }
}

int max_index(const IndexSet& a, const IndexSet& b) {
  int m = 0;
  for (int i : a) m = std::max(m, i);
  for (int i : b) m = std::max(m, i);
  return m;
}

}  // namespace

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::embedded: return "embedded";
    case RunStatus::stopped_not_alignable: return "stopped_not_alignable";
    case RunStatus::stopped_noise_dominated: return "stopped_noise_dominated";
  }
  return "unknown";
}

RunResult run(const DataMatrix& x_in, const DataMatrix& y_in, const RunConfig& cfg) {
  if (x_in.p() != y_in.p())
    throw ShapeError("feature counts differ: " + std::to_string(x_in.p()) + " vs " +
                     std::to_string(y_in.p()));
  const DataMatrix x = x_in.centered() ? x_in : center_columns(x_in);
  const DataMatrix y = y_in.centered() ? y_in : center_columns(y_in);
  const Index m = std::min(x.n(), y.n());
  check_index_set(cfg.gamma1, m, "gamma1");
  check_index_set(cfg.gamma2, m, "gamma2");
  if (!cfg.skip_screening) {
    if (cfg.screen_gamma.empty()) throw ConfigError("screen_gamma is empty");
    check_index_set(cfg.screen_gamma, x.n() + y.n(), "screen_gamma");
  }

  RunResult result;
  DistanceMatrix d = cross_sq_distances(x, y);
  if (cfg.auto_omega) {
    int r = std::max(1, max_index(cfg.gamma1, cfg.gamma2));
    result.bandwidth = auto_omega(x, y, cfg.omega_grid, r, cfg.auto_omega_resamples, cfg.seed);
  } else {
    result.bandwidth = select_bandwidth(d, cfg.omega);
  }

  if (!cfg.skip_screening) {
    double w = cfg.screen_omega.value_or(result.bandwidth.omega);
    result.alignability = screen_alignability(x, y, w, cfg.k_screen, cfg.screen_gamma);
    if (!result.alignability->alignable) {
      result.status = RunStatus::stopped_not_alignable;
      return result;
    }
  }

  KernelMatrix k = build_duo_kernel(d, result.bandwidth);
  if (cfg.noise_check) {
    result.noise = detect_noise_regime(calibrated_bulk_eigenvalues(k, x, y), cfg.k_skip, cfg.c1,
                                       cfg.c2);
    if (result.noise->noise_dominated) {
      result.status = RunStatus::stopped_noise_dominated;
      return result;
    }
  }

  ScaledSvd svd = duo_svd(k);
  result.singular_values = svd.s;
  result.embedding = select_embeddings(svd, cfg.gamma1, cfg.gamma2);
  result.status = RunStatus::embedded;
  return result;
}

void write_run_artifacts(const std::filesystem::path& dir, const RunConfig& cfg,
                         const RunResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  write_json(dir / "config.json", cfg);
  write_json(dir / "status.json", nlohmann::json{{"status", to_string(result.status)}});
  write_json(dir / "bandwidth.json", result.bandwidth);
  if (result.alignability) write_json(dir / "alignability.json", *result.alignability);
  if (result.noise) write_json(dir / "noise.json", *result.noise);
  if (result.embedding) {
    save_csv(dir / "embedding_x.csv", result.embedding->ex);
    save_csv(dir / "embedding_y.csv", result.embedding->ey);
    save_csv(dir / "singular_values.csv", Eigen::MatrixXd(result.singular_values));
    write_json(dir / "embedding.json", embedding_sidecar(*result.embedding, result.bandwidth));
  }
}

}  // namespace duo
