#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greenran/agents.hpp"
#include "greenran/baselines.hpp"
#include "greenran/env.hpp"
#include "greenran/oracle.hpp"
#include "greenran/solar.hpp"
#include "greenran/traffic.hpp"

namespace greenran {

struct SolarSpec {
  std::string city = "synthetic";
  /// City-wide trace file; the synthetic generator is used when unset.
  std::optional<std::filesystem::path> trace;
  SyntheticSolarParams synthetic;
  /// Per-node trace overrides keyed by node name ("cu", "du0", ...).
  std::map<std::string, std::filesystem::path> node_traces;
};

struct RunSpec {
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "out";
};

struct OracleSpec {
  OracleMode mode = OracleMode::Levels;
  double grid_step = 1.0;
  OracleLimits limits;
};

/// Everything needed to reproduce a run. Defaults are the reference setup:
/// 20 DUs, a 4-function chain, year-long horizon, reference energy and learning values.
struct ScenarioConfig {
  EnvConfig env;
  TrafficProfileConfig traffic;
  SolarSpec solar;
  PolicyKind policy = PolicyKind::RldfsQL;
  LearningParams learning;
  DiscretizationSpec discretization;
  RunSpec run;
  OracleSpec oracle;
  std::vector<PolicyKind> sweep_policies{PolicyKind::DRAN, PolicyKind::CRAN, PolicyKind::RldfsQL,
                                         PolicyKind::RldfsSarsa};
  /// Directory relative trace paths are resolved against.
  std::filesystem::path base_dir = ".";

  void validate() const;
};

/// Parses the JSON scenario format; unknown keys and bad values raise
/// ConfigError naming the field (e.g. "env.du_count").
ScenarioConfig parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir = ".");
ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const ScenarioConfig& cfg);

/// Label for the traffic intensity: low / medium / high for 0.5 / 1.0 / 1.5.
std::string traffic_rate_label(double intensity);

/// Loads and solar traces for one seed; randomness comes from named sub-streams of it.
EnvData build_env_data(const ScenarioConfig& cfg, std::uint64_t seed);
Environment make_environment(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace greenran
