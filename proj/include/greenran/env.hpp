#pragma once

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greenran/solar.hpp"
#include "greenran/types.hpp"

namespace greenran {

struct BatteryState {
  double stored_kwh = 0.0;
  double capacity_kwh = 0.0;
  double unstored_total_kwh = 0.0;  // cumulative overflow at the capacity bound
};

/// Advances one battery by a timestep: b' = min(cap, b - p + panel * G).
/// Overflow above the capacity is added to unstored_total_kwh.
/// Throws std::invalid_argument if p is negative or exceeds b + panel * G.
BatteryState battery_step(const BatteryState& state, double dispatch_kwh, double panel_size,
                          double generation_per_unit);

/// Largest admissible dispatch: min(consumption, b + panel * G).
double feasible_dispatch_max(const BatteryState& state, double panel_size, double generation_per_unit,
                             double energy_kwh);

/// Windowed reward -psi * (sum of the last window+1 step costs). With fewer
/// entries available every one of them is summed.
double windowed_reward(std::span<const double> opex_history, std::size_t window, double scale);

/// Action of one agent. DUs give one split point per non-pinned traffic type
/// (pinned types always run fully at the DU); the CU gives none.
struct NodeAction {
  std::vector<std::size_t> splits;
  std::size_t dispatch_level = 0;

  friend bool operator==(const NodeAction&, const NodeAction&) = default;
};

struct Observation {
  double battery_kwh = 0.0;
  /// Own per-type load for a DU; per-type sum over all DUs for the CU.
  std::vector<double> loads;
  std::size_t time_of_day = 0;
};

/// One environment step. Per-node vectors list DU 0..R-1 followed by the CU.
struct StepRecord {
  std::size_t t = 0;
  double price = 0.0;
  double opex = 0.0;
  std::vector<double> energy_kwh;
  std::vector<double> dispatch_kwh;
  std::vector<double> unstored_kwh;
  std::vector<double> generation_kwh;
  std::vector<double> battery_kwh;  // after the step
};

struct EnvConfig {
  std::size_t du_count = 20;
  std::size_t functions = 4;
  std::size_t horizon = 24 * 365;
  std::size_t day_length = 24;
  TariffSchedule tariff;
  NodeEnergyConfig cu = NodeEnergyConfig::cu_defaults();
  NodeEnergyConfig du = NodeEnergyConfig::du_defaults();
  std::map<std::size_t, NodeEnergyConfig> du_overrides;
  std::vector<TrafficType> types = default_traffic_types();
  std::size_t reward_window = 48;
  /// psi; derived from the scenario when unset.
  std::optional<double> reward_scale;
  double initial_battery_fraction = 0.0;
  std::vector<double> dispatch_levels{0.0, 0.5, 1.0};

  const NodeEnergyConfig& du_config(std::size_t r) const;
  std::vector<std::size_t> splittable_types() const;
  void validate() const;
};

/// Exogenous inputs: traffic load and one solar trace per node (shared
/// pointers so a city trace can serve every node).
struct EnvData {
  LoadMatrix loads;
  std::vector<std::shared_ptr<const SolarTrace>> solar;  // DU 0..R-1, then CU

  static EnvData with_shared_solar(LoadMatrix loads, SolarTrace trace);
};

/// Hourly simulator of one CU and R DUs.
class Environment {
 public:
  Environment(EnvConfig config, EnvData data);

  void reset();
  /// Number of steps before done(); data shorter than this wraps cyclically.
  void set_horizon(std::size_t steps) { config_.horizon = steps; }

  const StepRecord& step(std::span<const NodeAction> actions);

  std::size_t node_count() const { return config_.du_count + 1; }
  std::size_t cu_index() const { return config_.du_count; }
  std::size_t time() const { return t_; }
  bool done() const { return t_ >= config_.horizon; }

  Observation observe(std::size_t node) const;
  /// Windowed reward after the most recent step.
  double reward() const;
  double reward_scale() const { return reward_scale_; }

  const BatteryState& battery(std::size_t node) const { return batteries_.at(node); }
  const NodeEnergyConfig& node_config(std::size_t node) const;
  double generation_per_unit(std::size_t node, std::size_t t) const;
  double price(std::size_t t) const;

  /// Running totals since reset.
  double total_opex() const { return total_opex_; }
  double total_generation(std::size_t node) const { return gen_total_.at(node); }
  double total_dispatch(std::size_t node) const { return dispatch_total_.at(node); }
  double initial_battery(std::size_t node) const;

  /// Keeps every StepRecord since reset when enabled (off by default for long training runs).
  void set_logging(bool on) { logging_ = on; }
  const std::vector<StepRecord>& log() const { return log_; }

  const EnvConfig& config() const { return config_; }
  const EnvData& data() const { return data_; }

 private:
  std::size_t data_t(std::size_t t) const { return t % data_.loads.horizon(); }
  double default_reward_scale() const;

  EnvConfig config_;
  EnvData data_;
  FunctionChain chain_;
  std::vector<std::size_t> splittable_;
  double reward_scale_ = 1.0;

  std::size_t t_ = 0;
  std::vector<BatteryState> batteries_;
  std::deque<double> window_;  // opex of the last reward_window + 1 steps
  double total_opex_ = 0.0;
  std::vector<double> gen_total_;
  std::vector<double> dispatch_total_;
  StepRecord last_;
  bool logging_ = false;
  std::vector<StepRecord> log_;
};

/// Episode log with header `t,node,E_kwh,p_kwh,unstored_kwh,price,opex`; one
/// row per node per step, opex being that node's on-grid cost.
void write_episode_log(std::ostream& out, std::span<const StepRecord> records, std::size_t du_count);

std::string node_name(std::size_t node, std::size_t du_count);

}  // namespace greenran
