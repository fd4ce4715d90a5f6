#pragma once

#include "hoselm/pipeline.hpp"

#include <json.hpp>

#include <filesystem>

namespace hoselm {

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON document; see README for the layout. Doubles are written in
// shortest round-trip form so a load reproduces the weights bit for bit.
nlohmann::json model_to_json(const HOselmModel& m);
HOselmModel model_from_json(const nlohmann::json& j);

void save_model(const HOselmModel& m, const std::filesystem::path& path);
HOselmModel load_model(const std::filesystem::path& path);

nlohmann::json config_to_json(const PipelineConfig& cfg);
// Reads the keys present in j over the values already in cfg.
void merge_config(const nlohmann::json& j, PipelineConfig& cfg);

}  // namespace hoselm
