#include "duo/serialize.hpp"

#include "duo/error.hpp"

#include <fstream>

namespace duo {

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::string to_string(BandwidthSource s) {
  switch (s) {
    case BandwidthSource::fixed: return "fixed";
    case BandwidthSource::percentile: return "percentile";
    case BandwidthSource::resampled: return "resampled";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const AlignabilityReport& r) {
  j = {{"median_purity", r.median_purity},
       {"alignable", r.alignable},
       {"k", r.k},
       {"gamma", r.gamma},
       {"purities", r.purities}};
}

void to_json(nlohmann::json& j, const NoiseRegimeReport& r) {
  j = {{"noise_dominated", r.noise_dominated},
       {"bulk_median", r.bulk_median},
       {"k_skip", r.k_skip},
       {"c1", r.c1},
       {"c2", r.c2},
       {"w", to_vector(r.w)},
       {"gap_ratios", r.gap_ratios}};
}

void to_json(nlohmann::json& j, const Bandwidth& b) {
  j = {{"h", b.h}, {"omega", b.omega}, {"source", to_string(b.source)}};
}

void to_json(nlohmann::json& j, const MetricReport& m) {
  j = {{"name", m.name}, {"value", m.value}};
  if (m.per_dataset) j["per_dataset"] = {m.per_dataset->first, m.per_dataset->second};
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"omega", c.auto_omega ? nlohmann::json("auto") : nlohmann::json(c.omega)},
       {"k_screen", c.k_screen},
       {"screen_gamma", c.screen_gamma},
       {"gamma1", c.gamma1},
       {"gamma2", c.gamma2},
       {"skip_screening", c.skip_screening},
       {"noise_check", c.noise_check},
       {"k_skip", c.k_skip},
       {"c1", c.c1},
       {"c2", c.c2},
       {"seed", c.seed}};
  if (c.auto_omega) {
    j["omega_grid"] = c.omega_grid;
    j["auto_omega_resamples"] = c.auto_omega_resamples;
  }
  if (c.screen_omega) j["screen_omega"] = *c.screen_omega;
}

void to_json(nlohmann::json& j, const QuantileTable& q) {
  j = {{"levels", q.levels}, {"values", q.values}, {"pooled_count", q.pooled.size()}};
}

nlohmann::json embedding_sidecar(const JointEmbedding& e, const Bandwidth& b) {
  return {{"gamma1", e.gamma1},
          {"gamma2", e.gamma2},
          {"singular_values", {{"x", to_vector(e.s1)}, {"y", to_vector(e.s2)}}},
          {"h", b.h},
          {"omega", b.omega}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace duo
