#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "greenran/env.hpp"
#include "greenran/rng.hpp"

namespace greenran {

struct DiscretizationSpec {
  std::size_t battery_bins = 4;
  std::size_t load_bins = 3;
  std::size_t time_values = 24;
  /// Interior bin edges as fractions of the agent's max load; equal width when empty.
  std::vector<double> load_thresholds;

  void validate() const;
};

/// Maps a continuous observation to a state index:
/// battery bin x per-type load bins x time of day.
class Discretizer {
 public:
  Discretizer(DiscretizationSpec spec, double battery_capacity, std::vector<double> max_loads);

  std::size_t state_count() const;
  std::size_t battery_bin(double kwh) const;
  std::size_t load_bin(std::size_t type, double load) const;
  std::size_t operator()(const Observation& obs) const;

  const DiscretizationSpec& spec() const { return spec_; }

 private:
  DiscretizationSpec spec_;
  double capacity_;
  std::vector<double> max_loads_;
  std::vector<double> edges_;  // fractions
};

/// Finite action set of one agent: split combination x dispatch level.
class ActionSpace {
 public:
  ActionSpace(std::size_t splittable_types, std::size_t functions, std::size_t levels);

  std::size_t size() const { return combos_ * levels_; }
  NodeAction decode(std::size_t index) const;
  std::size_t encode(const NodeAction& action) const;

 private:
  std::size_t types_;
  std::size_t functions_;
  std::size_t levels_;
  std::size_t combos_;
};

class QTable {
 public:
  QTable() = default;
  QTable(std::size_t states, std::size_t actions);

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  double& at(std::size_t s, std::size_t a) { return values_.at(s * actions_ + a); }
  double at(std::size_t s, std::size_t a) const { return values_.at(s * actions_ + a); }
  std::uint64_t visits(std::size_t s, std::size_t a) const { return visits_.at(s * actions_ + a); }
  void record_visit(std::size_t s, std::size_t a) { ++visits_.at(s * actions_ + a); }
  void set_visits(std::size_t s, std::size_t a, std::uint64_t n) { visits_.at(s * actions_ + a) = n; }

  std::span<const double> row(std::size_t s) const;
  double max_value(std::size_t s) const;
  /// Greedy action, ties to the lowest index.
  std::size_t argmax(std::size_t s) const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t states_ = 0;
  std::size_t actions_ = 0;
  std::vector<double> values_;
  std::vector<std::uint64_t> visits_;
};

enum class EpsilonSchedule { PerStep, PerEpisode };

struct LearningParams {
  std::size_t episodes = 4000;
  double alpha = 0.05;
  double gamma = 0.90;
  double epsilon_start = 0.5;
  double epsilon_decay = 5e-5;
  double epsilon_floor = 0.01;
  EpsilonSchedule schedule = EpsilonSchedule::PerStep;
  std::size_t episode_length = 24;
  /// Restore initial batteries (and the reward window) at each episode start.
  bool reset_each_episode = false;

  void validate() const;
};

/// Exploration rate after `steps` environment steps / `episodes` finished episodes.
double epsilon_at(const LearningParams& params, std::size_t steps, std::size_t episodes);

/// Q(s,a) += alpha [R + gamma max_A Q(s',A) - Q(s,a)]; the bootstrap term is
/// dropped when `terminal`. Returns the new Q(s,a).
double q_update(QTable& q, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                const LearningParams& params, bool terminal = false);

/// Q(s,a) += alpha [R + gamma Q(s',a') - Q(s,a)].
double sarsa_update(QTable& q, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                    std::size_t a_next, const LearningParams& params, bool terminal = false);

/// Epsilon-greedy choice; greedy ties go to the lowest action index.
std::size_t select_action(const QTable& q, std::size_t s, double epsilon, Rng& rng);

enum class Algorithm { QLearning, Sarsa };

/// One independent learner per node (DU 0..R-1, then the CU).
struct AgentSet {
  std::vector<Discretizer> discretizers;
  std::vector<ActionSpace> action_spaces;
  std::vector<QTable> tables;

  std::size_t size() const { return tables.size(); }
  /// Greedy joint action for the environment's current observations.
  std::vector<NodeAction> greedy_actions(const Environment& env) const;
};

/// Fresh zero-initialized agents sized for `env`.
AgentSet make_agents(const Environment& env, const DiscretizationSpec& spec);

struct TrainingResult {
  AgentSet agents;
  std::vector<double> episode_opex;  // total on-grid cost per episode
};

/// Multi-agent training with the shared windowed reward. The environment is
/// copied and driven for params.episodes x params.episode_length steps, its
/// exogenous data wrapping cyclically.
TrainingResult train(const Environment& env, Algorithm algorithm, const LearningParams& params,
                     const DiscretizationSpec& spec, std::uint64_t seed);

/// CSV `state_bin,action,q,visits`, every cell of the table.
void write_qtable(std::ostream& out, const QTable& q);
/// Reads a table and checks it against the expected dimensions.
QTable read_qtable(std::istream& in, std::size_t states, std::size_t actions, std::string_view label);

}  // namespace greenran
