#pragma once

#include "duo/embedding.hpp"
#include "duo/screening.hpp"
#include "duo/spectral_diagnostics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace duo {

struct RunConfig {
  double omega = kDefaultOmega;
  bool auto_omega = false;
  std::vector<double> omega_grid = default_omega_grid();
  int auto_omega_resamples = 5;
  std::optional<double> screen_omega;  // defaults to omega
  int k_screen = kDefaultScreenK;
  IndexSet screen_gamma = default_screen_gamma();
  IndexSet gamma1 = default_embedding_gamma(6);
  IndexSet gamma2 = default_embedding_gamma(6);
  bool skip_screening = false;
  bool noise_check = false;
  int k_skip = kDefaultKSkip;
  double c1 = kDefaultC1;
  double c2 = kDefaultC2;
  std::uint64_t seed = 0;
};

enum class RunStatus { embedded, stopped_not_alignable, stopped_noise_dominated };

std::string to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::embedded;
  std::optional<AlignabilityReport> alignability;
  std::optional<NoiseRegimeReport> noise;
  std::optional<JointEmbedding> embedding;
  Bandwidth bandwidth;
  Eigen::VectorXd singular_values;
};

RunResult run(const DataMatrix& x, const DataMatrix& y, const RunConfig& cfg);

void write_run_artifacts(const std::filesystem::path& dir, const RunConfig& cfg,
                         const RunResult& result);

}  // namespace duo
