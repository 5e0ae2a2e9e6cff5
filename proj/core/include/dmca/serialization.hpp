#pragma once

#include "dmca/clustering.hpp"
#include "dmca/lasso.hpp"
#include "dmca/pipeline.hpp"
#include "dmca/synth.hpp"

#include <nlohmann/json.hpp>

namespace dmca {

/// Version of the config / manifest JSON layout.
inline constexpr int kConfigSchemaVersion = 1;

// Infinite thresholds are written as the string "inf". Malformed documents
// raise ParameterError naming the offending key.

void to_json(nlohmann::json& j, const Labeler& labeler);
void from_json(const nlohmann::json& j, Labeler& labeler);

void to_json(nlohmann::json& j, const SmootherConfig& config);
void from_json(const nlohmann::json& j, SmootherConfig& config);

void to_json(nlohmann::json& j, const SolverOptions& options);
void from_json(const nlohmann::json& j, SolverOptions& options);

/// {"mode": "relative" | "absolute", "value": x}. Reading also accepts
/// "auto" (relative 0.01) and a bare number (absolute).
void to_json(nlohmann::json& j, const GammaSpec& gamma);
void from_json(const nlohmann::json& j, GammaSpec& gamma);

void to_json(nlohmann::json& j, const DmcaConfig& config);
void from_json(const nlohmann::json& j, DmcaConfig& config);

void to_json(nlohmann::json& j, const ColumnDiagnostics& diag);

void to_json(nlohmann::json& j, const WaveComponent& wave);
void from_json(const nlohmann::json& j, WaveComponent& wave);

DmcaConfig config_from_json_text(const std::string& text);

}  // namespace dmca
