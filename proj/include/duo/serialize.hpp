#pragma once

#include "duo/evaluation.hpp"
#include "duo/pipeline.hpp"

#include <json.hpp>

namespace duo {

void to_json(nlohmann::json& j, const AlignabilityReport& r);
void to_json(nlohmann::json& j, const NoiseRegimeReport& r);
void to_json(nlohmann::json& j, const Bandwidth& b);
void to_json(nlohmann::json& j, const MetricReport& m);
void to_json(nlohmann::json& j, const RunConfig& c);
void to_json(nlohmann::json& j, const QuantileTable& q);

// {gamma1, gamma2, singular_values, h, omega}
nlohmann::json embedding_sidecar(const JointEmbedding& e, const Bandwidth& b);

std::string to_string(BandwidthSource s);

// Dumps with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace duo
