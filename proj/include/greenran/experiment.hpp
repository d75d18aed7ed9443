#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greenran/agents.hpp"
#include "greenran/baselines.hpp"
#include "greenran/oracle.hpp"
#include "greenran/scenario.hpp"

namespace greenran {

/// Chooses the joint action for the environment's current step.
using Policy = std::function<std::vector<NodeAction>(const Environment&)>;

struct EvaluationSummary {
  PolicyKind policy = PolicyKind::DRAN;
  std::string city;
  std::string traffic_rate;
  double total_opex = 0.0;
  double renewable_used = 0.0;
  double unstored = 0.0;
};

struct EvaluationRun {
  EvaluationSummary summary;
  std::vector<StepRecord> log;
  std::vector<double> battery_delta;  // final minus initial stored energy per node
  std::vector<double> generation;     // total generation per node
};

/// Runs `policy` from reset until the environment's horizon.
EvaluationRun run_policy(Environment env, const Policy& policy, PolicyKind kind, const ScenarioConfig& cfg);

Policy static_policy(PolicyKind kind);
Policy greedy_policy(std::shared_ptr<const AgentSet> agents);
Algorithm algorithm_for(PolicyKind kind);

TrainingResult train_scenario(const ScenarioConfig& cfg, PolicyKind kind, std::uint64_t seed);

/// Optimal schedule of the scenario's first `env.horizon` steps.
OracleSolution solve_scenario_oracle(const ScenarioConfig& cfg, std::uint64_t seed);

/// Trains if needed, then evaluates one policy for one seed.
EvaluationRun evaluate_policy(const ScenarioConfig& cfg, PolicyKind kind, std::uint64_t seed);

std::string summary_header();
std::string summary_row(const EvaluationSummary& s);

enum class SweepAxis { Panel, Battery, Traffic };
SweepAxis sweep_axis_from_string(const std::string& name);
std::string to_string(SweepAxis axis);
/// Scenario with the axis set to `value`. Panel and battery values size the
/// DUs; the CU keeps its configured ratio to the DU.
ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepAxis axis, double value);

struct SweepRow {
  SweepAxis axis;
  double value;
  PolicyKind policy;
  double total_opex;  // median over the run's seeds
};

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::span<const double> values);

// CLI-level commands. Each writes CSVs below cfg.run.output_dir, one
// subdirectory per seed, files written atomically.

/// seed_<s>/qtable_<node>.csv and seed_<s>/learning_curve.csv.
void cmd_train(const ScenarioConfig& cfg);
/// seed_<s>/episode_log.csv, seed_<s>/summary.csv and summary.csv over all seeds.
/// Learned policies read their tables from `artifacts` (a cmd_train output directory).
void cmd_evaluate(const ScenarioConfig& cfg, const std::optional<std::filesystem::path>& artifacts);
/// sweep_<axis>.csv with `axis,value,policy,total_opex`.
void cmd_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::span<const double> values);
/// seed_<s>/oracle_summary.csv and seed_<s>/oracle_schedule.csv. Returns the first seed's optimum.
double cmd_oracle(const ScenarioConfig& cfg);

/// Reads the per-node tables written by cmd_train for one seed.
AgentSet load_agents(const ScenarioConfig& cfg, std::uint64_t seed, const std::filesystem::path& seed_dir);

std::filesystem::path seed_dir(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace greenran
