/**
 * @file config.hpp
 * @brief Scenario and tuning configuration files (JSON), gain-set files,
 *        and the run manifest. Unknown keys are rejected everywhere.
 */
#pragma once

#include "quadnlpid/presets.hpp"
#include "quadnlpid/simengine.hpp"
#include "quadnlpid/tuning.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace quadnlpid {

/// Output section of a scenario config.
struct OutputConfig {
  std::string dir = ".";
  std::string timeseries = "timeseries.csv";
  std::string report = "metrics.txt";
  std::string manifest = "manifest.json";
};

/// A parsed scenario config: the runnable scenario plus bookkeeping.
struct LoadedScenario {
  Scenario scenario;
  OutputConfig output;
  std::uint64_t seed = 0;               ///< recorded in the manifest
  std::string controller_label = "custom";
  std::string trajectory_label = "custom";
  nlohmann::json resolved;              ///< fully-resolved config document
};

/// Parses a scenario config document. Sections: params, controller,
/// trajectory, sim, output; all optional (defaults: benchmark vehicle,
/// paper-nlpid controller, step trajectory). Throws ConfigError on unknown
/// keys or invalid values.
LoadedScenario scenario_from_json(const nlohmann::json& doc);
LoadedScenario load_scenario_config(const std::string& path);

/// Gain-set files: {"family": "lpid"|"nlpid", "channels": {"x": {...}, ...}}.
std::array<ChannelGains, 6> gains_from_json(const nlohmann::json& doc, ControllerFamily& family_out);
nlohmann::json gains_to_json(const std::array<ChannelGains, 6>& gains);
std::array<ChannelGains, 6> load_gains_file(const std::string& path, ControllerFamily& family_out);
void write_gains_file(const std::array<ChannelGains, 6>& gains, const std::string& path);

/// Tuning config: a "ga" section (hyperparameters, seed, family, fitness
/// kind) plus an optional "scenario" section reusing the scenario schema.
struct LoadedTuneConfig {
  GaConfig ga;
  ControllerFamily family = ControllerFamily::NLPID;
  std::string fitness = "opi";  ///< "opi" or "sphere" (self-test mode)
  int sphere_dim = 6;
  Scenario scenario;            ///< fitness scenario template
  nlohmann::json resolved;
};
LoadedTuneConfig tune_from_json(const nlohmann::json& doc);
LoadedTuneConfig load_tune_config(const std::string& path);

/// 64-bit FNV-1a hash of a string, hex-encoded; keys the manifest to the
/// exact resolved configuration.
std::string fnv1a_hex(const std::string& text);

/// Run manifest: tool/format versions, the resolved config and its hash,
/// the seed, and the produced files. Embedding the resolved config makes
/// the manifest sufficient to re-execute the run exactly.
nlohmann::json make_manifest(const nlohmann::json& resolved_config, std::uint64_t seed,
                             const std::vector<std::string>& outputs);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace quadnlpid
