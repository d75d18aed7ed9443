#include "greenran/agents.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "greenran/csv.hpp"
#include "greenran/error.hpp"

namespace greenran {

void DiscretizationSpec::validate() const {
  if (battery_bins == 0) throw ConfigError("policy.discretization.battery_bins: must be >= 1");
  if (load_bins == 0) throw ConfigError("policy.discretization.load_bins: must be >= 1");
  if (time_values == 0) throw ConfigError("policy.discretization.time_values: must be >= 1");
  if (!load_thresholds.empty()) {
    if (load_thresholds.size() + 1 != load_bins) {
      throw ConfigError("policy.discretization.load_thresholds: need load_bins - 1 edges");
    }
    for (std::size_t k = 0; k < load_thresholds.size(); ++k) {
      if (!(load_thresholds[k] > 0.0) || (k > 0 && !(load_thresholds[k] > load_thresholds[k - 1]))) {
        throw ConfigError("policy.discretization.load_thresholds: must be positive and increasing");
      }
    }
  }
}

Discretizer::Discretizer(DiscretizationSpec spec, double battery_capacity, std::vector<double> max_loads)
    : spec_(std::move(spec)), capacity_(battery_capacity), max_loads_(std::move(max_loads)) {
  spec_.validate();
  if (spec_.load_thresholds.empty()) {
    for (std::size_t k = 1; k < spec_.load_bins; ++k) {
      edges_.push_back(static_cast<double>(k) / static_cast<double>(spec_.load_bins));
    }
  } else {
    edges_ = spec_.load_thresholds;
  }
}

std::size_t Discretizer::state_count() const {
  std::size_t n = spec_.battery_bins * spec_.time_values;
  for (std::size_t i = 0; i < max_loads_.size(); ++i) n *= spec_.load_bins;
  return n;
}

std::size_t Discretizer::battery_bin(double kwh) const {
  if (!(capacity_ > 0.0) || !(kwh > 0.0)) return 0;
  const auto bins = static_cast<double>(spec_.battery_bins);
  const auto b = static_cast<std::size_t>(std::floor(kwh / capacity_ * bins));
  return std::min(b, spec_.battery_bins - 1);
}

std::size_t Discretizer::load_bin(std::size_t type, double load) const {
  const double max = max_loads_.at(type);
  if (!(max > 0.0)) return 0;
  std::size_t bin = 0;
  while (bin < edges_.size() && load >= edges_[bin] * max) ++bin;
  return bin;
}

std::size_t Discretizer::operator()(const Observation& obs) const {
  if (obs.loads.size() != max_loads_.size()) throw std::invalid_argument("discretizer: load arity mismatch");
  std::size_t s = battery_bin(obs.battery_kwh);
  for (std::size_t i = 0; i < obs.loads.size(); ++i) s = s * spec_.load_bins + load_bin(i, obs.loads[i]);
  return s * spec_.time_values + obs.time_of_day % spec_.time_values;
}

ActionSpace::ActionSpace(std::size_t splittable_types, std::size_t functions, std::size_t levels)
    : types_(splittable_types), functions_(functions), levels_(levels), combos_(1) {
  if (levels == 0) throw std::invalid_argument("action space needs at least one dispatch level");
  for (std::size_t k = 0; k < types_; ++k) combos_ *= functions_ + 1;
}

NodeAction ActionSpace::decode(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("action index " + std::to_string(index) + " out of range");
  NodeAction a;
  a.dispatch_level = index % levels_;
  std::size_t combo = index / levels_;
  a.splits.resize(types_);
  for (std::size_t k = types_; k-- > 0;) {
    a.splits[k] = combo % (functions_ + 1);
    combo /= functions_ + 1;
  }
  return a;
}

std::size_t ActionSpace::encode(const NodeAction& action) const {
  if (action.splits.size() != types_ || action.dispatch_level >= levels_) {
    throw std::invalid_argument("action does not belong to this action space");
  }
  std::size_t combo = 0;
  for (auto k : action.splits) {
    if (k > functions_) throw std::invalid_argument("split point out of range");
    combo = combo * (functions_ + 1) + k;
  }
  return combo * levels_ + action.dispatch_level;
}

QTable::QTable(std::size_t states, std::size_t actions)
    : states_(states), actions_(actions), values_(states * actions, 0.0), visits_(states * actions, 0) {}

std::span<const double> QTable::row(std::size_t s) const {
  if (s >= states_) throw std::out_of_range("state " + std::to_string(s) + " out of range");
  return std::span<const double>(values_).subspan(s * actions_, actions_);
}

double QTable::max_value(std::size_t s) const {
  auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

std::size_t QTable::argmax(std::size_t s) const {
  auto r = row(s);
  // max_element returns the first maximum.
  return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

void LearningParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("policy.learning.alpha: must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("policy.learning.gamma: must lie in [0, 1)");
  if (!(epsilon_start >= 0.0 && epsilon_start <= 1.0)) {
    throw ConfigError("policy.learning.epsilon_start: must lie in [0, 1]");
  }
  if (!(epsilon_floor >= 0.0 && epsilon_floor <= 1.0)) {
    throw ConfigError("policy.learning.epsilon_floor: must lie in [0, 1]");
  }
  if (!(epsilon_decay >= 0.0)) throw ConfigError("policy.learning.epsilon_decay: must be >= 0");
  if (episode_length == 0) throw ConfigError("policy.learning.episode_length: must be >= 1");
}

double epsilon_at(const LearningParams& params, std::size_t steps, std::size_t episodes) {
  const auto n = static_cast<double>(params.schedule == EpsilonSchedule::PerStep ? steps : episodes);
  return std::max(params.epsilon_floor, params.epsilon_start - params.epsilon_decay * n);
}

double q_update(QTable& q, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                const LearningParams& params, bool terminal) {
  const double bootstrap = terminal ? 0.0 : params.gamma * q.max_value(s_next);
  double& v = q.at(s, a);
  v += params.alpha * (reward + bootstrap - v);
  q.record_visit(s, a);
  return v;
}

double sarsa_update(QTable& q, std::size_t s, std::size_t a, double reward, std::size_t s_next,
                    std::size_t a_next, const LearningParams& params, bool terminal) {
  const double bootstrap = terminal ? 0.0 : params.gamma * q.at(s_next, a_next);
  double& v = q.at(s, a);
  v += params.alpha * (reward + bootstrap - v);
  q.record_visit(s, a);
  return v;
}

std::size_t select_action(const QTable& q, std::size_t s, double epsilon, Rng& rng) {
  if (epsilon > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
      std::uniform_int_distribution<std::size_t> pick(0, q.actions() - 1);
      return pick(rng);
    }
  }
  return q.argmax(s);
}

std::vector<NodeAction> AgentSet::greedy_actions(const Environment& env) const {
  std::vector<NodeAction> out;
  out.reserve(size());
  for (std::size_t n = 0; n < size(); ++n) {
    const auto s = discretizers[n](env.observe(n));
    out.push_back(action_spaces[n].decode(tables[n].argmax(s)));
  }
  return out;
}

AgentSet make_agents(const Environment& env, const DiscretizationSpec& spec) {
  const auto& cfg = env.config();
  const auto& loads = env.data().loads;
  const std::size_t types = cfg.types.size();
  const std::size_t splittable = cfg.splittable_types().size();
  const std::size_t levels = cfg.dispatch_levels.size();

  AgentSet set;
  for (std::size_t r = 0; r < cfg.du_count; ++r) {
    std::vector<double> max_loads(types);
    for (std::size_t i = 0; i < types; ++i) max_loads[i] = loads.max_load(r, i);
    set.discretizers.emplace_back(spec, cfg.du_config(r).battery_kwh, std::move(max_loads));
    set.action_spaces.emplace_back(splittable, cfg.functions, levels);
  }
  std::vector<double> cu_max(types, 0.0);
  for (std::size_t i = 0; i < types; ++i) {
    for (std::size_t t = 0; t < loads.horizon(); ++t) {
      double sum = 0.0;
      for (std::size_t r = 0; r < cfg.du_count; ++r) sum += loads.at(r, i, t);
      cu_max[i] = std::max(cu_max[i], sum);
    }
  }
  set.discretizers.emplace_back(spec, cfg.cu.battery_kwh, std::move(cu_max));
  set.action_spaces.emplace_back(0, cfg.functions, levels);
  for (std::size_t n = 0; n < set.discretizers.size(); ++n) {
    set.tables.emplace_back(set.discretizers[n].state_count(), set.action_spaces[n].size());
  }
  return set;
}

TrainingResult train(const Environment& prototype, Algorithm algorithm, const LearningParams& params,
                     const DiscretizationSpec& spec, std::uint64_t seed) {
  params.validate();
  TrainingResult result{make_agents(prototype, spec), {}};
  auto& agents = result.agents;
  const std::size_t nodes = agents.size();

  Environment env = prototype;
  env.set_logging(false);
  env.reset();
  env.set_horizon(params.reset_each_episode ? params.episode_length
                                            : params.episodes * params.episode_length);

  auto rng = make_stream(seed, "exploration");
  std::vector<std::size_t> state(nodes), action(nodes), next_state(nodes), next_action(nodes);
  std::vector<NodeAction> joint(nodes);
  std::size_t steps = 0;
  bool have_next_action = false;
  result.episode_opex.reserve(params.episodes);

  auto observe_all = [&](std::vector<std::size_t>& out) {
    for (std::size_t n = 0; n < nodes; ++n) out[n] = agents.discretizers[n](env.observe(n));
  };

  for (std::size_t ep = 0; ep < params.episodes; ++ep) {
    if (params.reset_each_episode) {
      env.reset();
      have_next_action = false;
    }
    double episode_cost = 0.0;
    observe_all(state);
    for (std::size_t k = 0; k < params.episode_length; ++k) {
      const double eps = epsilon_at(params, steps, ep);
      for (std::size_t n = 0; n < nodes; ++n) {
        action[n] = have_next_action ? next_action[n] : select_action(agents.tables[n], state[n], eps, rng);
        joint[n] = agents.action_spaces[n].decode(action[n]);
      }
      episode_cost += env.step(joint).opex;
      ++steps;
      const double reward = env.reward();
      const bool terminal = params.reset_each_episode && k + 1 == params.episode_length;
      if (!terminal) observe_all(next_state);

      if (algorithm == Algorithm::QLearning) {
        for (std::size_t n = 0; n < nodes; ++n) {
          q_update(agents.tables[n], state[n], action[n], reward, terminal ? state[n] : next_state[n], params,
                   terminal);
        }
        have_next_action = false;
      } else {
        const double next_eps = epsilon_at(params, steps, ep);
        for (std::size_t n = 0; n < nodes; ++n) {
          next_action[n] = terminal ? 0 : select_action(agents.tables[n], next_state[n], next_eps, rng);
          sarsa_update(agents.tables[n], state[n], action[n], reward, terminal ? state[n] : next_state[n],
                       next_action[n], params, terminal);
        }
        have_next_action = !terminal;
      }
      state.swap(next_state);
    }
    result.episode_opex.push_back(episode_cost);
  }

  for (const auto& t : agents.tables) {
    for (std::size_t s = 0; s < t.states(); ++s) {
      for (double v : t.row(s)) {
        if (!std::isfinite(v) || std::abs(v) >= 1e6) throw std::runtime_error("training diverged: Q value " + csv::num(v));
      }
    }
  }
  return result;
}

void write_qtable(std::ostream& out, const QTable& q) {
  out << "state_bin,action,q,visits\n";
  for (std::size_t s = 0; s < q.states(); ++s) {
    for (std::size_t a = 0; a < q.actions(); ++a) {
      out << s << ',' << a << ',' << csv::num(q.at(s, a)) << ',' << q.visits(s, a) << '\n';
    }
  }
}

QTable read_qtable(std::istream& in, std::size_t states, std::size_t actions, std::string_view label) {
  csv::Reader reader(in, std::string(label));
  reader.expect_header({"state_bin", "action", "q", "visits"});
  QTable q(states, actions);
  std::vector<std::uint8_t> seen(states * actions, 0);
  while (auto row = reader.next()) {
    const auto s = reader.to_index((*row)[0]);
    const auto a = reader.to_index((*row)[1]);
    if (s >= states || a >= actions) {
      reader.fail("entry (" + std::to_string(s) + "," + std::to_string(a) + ") outside a " +
                  std::to_string(states) + "x" + std::to_string(actions) + " table");
    }
    q.at(s, a) = reader.to_double((*row)[2]);
    q.set_visits(s, a, reader.to_index((*row)[3]));
    seen[s * actions + a] = 1;
  }
  if (std::find(seen.begin(), seen.end(), std::uint8_t{0}) != seen.end()) {
    throw DataError(std::string(label) + ": table does not cover " + std::to_string(states) + "x" +
                    std::to_string(actions) + " entries");
  }
  return q;
}

}  // namespace greenran
