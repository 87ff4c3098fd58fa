#include "duo/error.hpp"
#include "duo/pipeline.hpp"
#include "duo/serialize.hpp"
#include "duo/simulation.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace duo;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("duo_pipeline_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("setting 1 pair is embedded with six columns") {
  ClusterPair s = sample_setting1(200, 220, 100, 1.0, 3);
  RunResult r = run(s.x, s.y, RunConfig{});
  CHECK(r.status == RunStatus::embedded);
  REQUIRE(r.alignability.has_value());
  CHECK(r.alignability->alignable);
  REQUIRE(r.embedding.has_value());
  CHECK(r.embedding->ex.rows() == 200);
  CHECK(r.embedding->ex.cols() == 6);
  CHECK(r.embedding->ey.rows() == 220);
  CHECK(r.embedding->ey.cols() == 6);
  CHECK(r.singular_values.size() == 200);
}

TEST_CASE("negative control stops as not alignable") {
  DataPair d = sample_negative_control(NegativeControl::klein_vs_line, 300, 300, 5);
  RunResult r = run(d.x, d.y, RunConfig{});
  CHECK(r.status == RunStatus::stopped_not_alignable);
  CHECK_FALSE(r.embedding.has_value());
  REQUIRE(r.alignability.has_value());
  CHECK(r.alignability->median_purity == 1.0);
}

TEST_CASE("pure noise with the noise check stops as noise dominated") {
  RunConfig cfg;
  cfg.noise_check = true;
  cfg.skip_screening = true;
  int stopped = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DataPair d = sample_pure_noise_pair(200, 200, 400, 1.0, 1.0, 100 + seed);
    RunResult r = run(d.x, d.y, cfg);
    REQUIRE(r.noise.has_value());
    stopped += r.status == RunStatus::stopped_noise_dominated;
    CHECK(r.embedding.has_value() == (r.status == RunStatus::embedded));
  }
  CHECK(stopped >= 9);
}

TEST_CASE("runs are deterministic and skip_screening equals the bare embedding") {
  ClusterPair s = sample_setting2(150, 160, 60, 2.0, 9);
  RunConfig cfg;
  cfg.skip_screening = true;
  RunResult a = run(s.x, s.y, cfg), b = run(s.x, s.y, cfg);
  REQUIRE(a.embedding.has_value());
  CHECK(a.embedding->ex == b.embedding->ex);
  CHECK_FALSE(a.alignability.has_value());

  DataMatrix x = center_columns(s.x), y = center_columns(s.y);
  DistanceMatrix d = cross_sq_distances(x, y);
  Bandwidth h = select_bandwidth(d, cfg.omega);
  JointEmbedding e = select_embeddings(duo_svd(build_duo_kernel(d, h)), cfg.gamma1, cfg.gamma2);
  auto d1 = scratch("skip_a"), d2 = scratch("skip_b");
  std::filesystem::create_directories(d1);
  std::filesystem::create_directories(d2);
  save_csv(d1 / "ex.csv", a.embedding->ex);
  save_csv(d2 / "ex.csv", e.ex);
  save_csv(d1 / "ey.csv", a.embedding->ey);
  save_csv(d2 / "ey.csv", e.ey);
  CHECK(slurp(d1 / "ex.csv") == slurp(d2 / "ex.csv"));
  CHECK(slurp(d1 / "ey.csv") == slurp(d2 / "ey.csv"));
  CHECK(a.bandwidth.h == h.h);
}

TEST_CASE("swapping the datasets swaps the embeddings") {
  ClusterPair s = sample_setting1(120, 150, 50, 1.0, 4);
  RunConfig cfg;
  cfg.skip_screening = true;
  RunResult a = run(s.x, s.y, cfg), b = run(s.y, s.x, cfg);
  REQUIRE(a.singular_values.size() == b.singular_values.size());
  CHECK((a.singular_values - b.singular_values).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(a.bandwidth.h == b.bandwidth.h);
  CHECK((a.embedding->ex.cwiseAbs() - b.embedding->ey.cwiseAbs()).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("configuration errors") {
  ClusterPair s = sample_setting1(40, 30, 30, 1.0, 2);
  RunConfig bad;
  bad.gamma1 = {2, 31};
  CHECK_THROWS_AS(run(s.x, s.y, bad), ConfigError);
  bad = RunConfig{};
  bad.gamma2 = {0};
  CHECK_THROWS_AS(run(s.x, s.y, bad), ConfigError);
  bad = RunConfig{};
  bad.screen_gamma = {};
  CHECK_THROWS_AS(run(s.x, s.y, bad), ConfigError);
  ClusterPair other = sample_setting1(40, 30, 40, 1.0, 2);
  CHECK_THROWS_AS(run(s.x, other.y, RunConfig{}), ShapeError);
}

TEST_CASE("auto omega picks a grid value reproducibly") {
  ClusterPair s = sample_setting1(120, 120, 50, 1.0, 6);
  RunConfig cfg;
  cfg.auto_omega = true;
  cfg.omega_grid = {0.2, 0.5, 0.8};
  cfg.seed = 11;
  RunResult a = run(s.x, s.y, cfg), b = run(s.x, s.y, cfg);
  CHECK(a.bandwidth.omega == b.bandwidth.omega);
  CHECK(a.bandwidth.h == b.bandwidth.h);
  CHECK((a.bandwidth.omega == 0.2 || a.bandwidth.omega == 0.5 || a.bandwidth.omega == 0.8));
}

TEST_CASE("run artifacts") {
  ClusterPair s = sample_setting1(80, 90, 40, 1.0, 7);
  RunConfig cfg;
  cfg.noise_check = true;
  RunResult r = run(s.x, s.y, cfg);
  auto dir = scratch("artifacts");
  write_run_artifacts(dir, cfg, r);
  for (const char* f : {"config.json", "status.json", "bandwidth.json", "alignability.json", "noise.json"})
    CHECK(std::filesystem::exists(dir / f));
  CHECK(std::filesystem::exists(dir / "embedding_x.csv") == (r.status == RunStatus::embedded));
  if (r.status == RunStatus::embedded) {
    DataMatrix ex = load_csv(dir / "embedding_x.csv", false);
    CHECK(ex.n() == 80);
    CHECK(ex.p() == 6);
    CHECK(std::filesystem::exists(dir / "singular_values.csv"));
  }
  auto again = scratch("artifacts_again");
  write_run_artifacts(again, cfg, run(s.x, s.y, cfg));
  for (const auto& e : std::filesystem::directory_iterator(dir))
    CHECK(slurp(e.path()) == slurp(again / e.path().filename()));
}
