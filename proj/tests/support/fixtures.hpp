#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "greenran/env.hpp"
#include "greenran/scenario.hpp"

namespace greenran::testing {

/// Small environment with explicit data: loads[r][type][t], one solar value
/// list shared by every node.
struct TinySpec {
  std::size_t du_count = 1;
  std::size_t functions = 2;
  std::size_t horizon = 4;
  std::vector<std::vector<std::vector<double>>> loads;  // empty: all zero
  std::vector<double> solar{0.0};
  NodeEnergyConfig cu = NodeEnergyConfig::cu_defaults();
  NodeEnergyConfig du = NodeEnergyConfig::du_defaults();
  TariffSchedule tariff = TariffSchedule();
  double initial_battery_fraction = 0.0;
};

EnvConfig tiny_config(const TinySpec& spec);
EnvData tiny_data(const TinySpec& spec);
Environment tiny_env(const TinySpec& spec);

/// Random tiny instance: loads in [0, max_load], solar in [0, max_solar].
TinySpec random_spec(std::uint64_t seed, std::size_t du_count, std::size_t functions, std::size_t horizon,
                     double max_load = 4.0, double max_solar = 0.2);

/// Every joint action of the environment (DUs: split combination x level; CU: level).
std::vector<std::vector<NodeAction>> all_joint_actions(const EnvConfig& cfg);

/// Uniformly random joint action.
std::vector<NodeAction> random_joint_action(const EnvConfig& cfg, std::mt19937_64& rng);

/// Scenario of the small deterministic instance used by convergence checks.
ScenarioConfig miniature_scenario();

}  // namespace greenran::testing
