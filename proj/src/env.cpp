#include "greenran/env.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "greenran/csv.hpp"
#include "greenran/energy.hpp"
#include "greenran/error.hpp"

namespace greenran {

BatteryState battery_step(const BatteryState& state, double dispatch_kwh, double panel_size,
                          double generation_per_unit) {
  const double available = state.stored_kwh + panel_size * generation_per_unit;
  if (!(dispatch_kwh >= 0.0) || dispatch_kwh > available) {
    throw std::invalid_argument("battery_step: dispatch " + csv::num(dispatch_kwh) +
                                " kWh outside available [0, " + csv::num(available) + "]");
  }
  const double remaining = available - dispatch_kwh;
  BatteryState next = state;
  if (remaining > state.capacity_kwh) {
    next.stored_kwh = state.capacity_kwh;
    next.unstored_total_kwh += remaining - state.capacity_kwh;
  } else {
    next.stored_kwh = remaining;
  }
  return next;
}

double feasible_dispatch_max(const BatteryState& state, double panel_size, double generation_per_unit,
                             double energy_kwh) {
  if (!(energy_kwh >= 0.0)) throw std::invalid_argument("feasible_dispatch_max: negative consumption");
  return std::min(energy_kwh, state.stored_kwh + panel_size * generation_per_unit);
}

double windowed_reward(std::span<const double> opex_history, std::size_t window, double scale) {
  const std::size_t n = std::min(opex_history.size(), window + 1);
  double sum = 0.0;
  for (std::size_t k = opex_history.size() - n; k < opex_history.size(); ++k) sum += opex_history[k];
  return -scale * sum;
}

const NodeEnergyConfig& EnvConfig::du_config(std::size_t r) const {
  auto it = du_overrides.find(r);
  return it == du_overrides.end() ? du : it->second;
}

std::vector<std::size_t> EnvConfig::splittable_types() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (!types[i].pinned_to_du) out.push_back(i);
  }
  return out;
}

void EnvConfig::validate() const {
  if (du_count == 0) throw ConfigError("env.du_count: must be >= 1");
  if (functions == 0) throw ConfigError("env.functions: must be >= 1");
  if (horizon == 0) throw ConfigError("env.horizon: must be >= 1");
  if (day_length == 0 || 24 % day_length != 0) {
    throw ConfigError("env.day_length: must divide the 24-hour tariff");
  }
  cu.validate("env.cu");
  du.validate("env.du");
  for (const auto& [r, cfg] : du_overrides) {
    if (r >= du_count) throw ConfigError("env.du_overrides: DU " + std::to_string(r) + " does not exist");
    cfg.validate("env.du_overrides." + std::to_string(r));
  }
  if (types.empty()) throw ConfigError("traffic.types: at least one traffic type required");
  for (const auto& ty : types) {
    if (!(ty.load_scale >= 0.0)) throw ConfigError("traffic.types.load_scale: must be >= 0");
  }
  if (reward_scale && !(*reward_scale >= 0.0)) throw ConfigError("env.reward_scale: must be >= 0");
  if (!(initial_battery_fraction >= 0.0 && initial_battery_fraction <= 1.0)) {
    throw ConfigError("env.initial_battery_fraction: must lie in [0, 1]");
  }
  if (dispatch_levels.empty()) throw ConfigError("env.dispatch_levels: at least one level required");
  for (double l : dispatch_levels) {
    if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("env.dispatch_levels: levels must lie in [0, 1]");
  }
}

EnvData EnvData::with_shared_solar(LoadMatrix loads, SolarTrace trace) {
  EnvData d;
  const std::size_t nodes = loads.du_count() + 1;
  d.loads = std::move(loads);
  auto shared = std::make_shared<const SolarTrace>(std::move(trace));
  d.solar.assign(nodes, shared);
  return d;
}

Environment::Environment(EnvConfig config, EnvData data)
    : config_(std::move(config)), data_(std::move(data)), chain_(config_.functions) {
  config_.validate();
  if (data_.loads.du_count() != config_.du_count || data_.loads.type_count() != config_.types.size()) {
    throw DataError("load matrix shape (" + std::to_string(data_.loads.du_count()) + " DUs, " +
                    std::to_string(data_.loads.type_count()) + " types) does not match the environment");
  }
  if (data_.loads.horizon() == 0) throw DataError("load matrix is empty");
  if (data_.solar.size() != node_count()) {
    throw DataError("need one solar trace per node (" + std::to_string(node_count()) + "), got " +
                    std::to_string(data_.solar.size()));
  }
  for (const auto& s : data_.solar) {
    if (!s || s->values.empty()) throw DataError("solar trace missing or empty");
    for (double v : s->values) {
      if (!(v >= 0.0)) throw DataError("solar trace " + s->site_name + " has a negative value");
    }
  }
  splittable_ = config_.splittable_types();
  reward_scale_ = config_.reward_scale ? *config_.reward_scale : default_reward_scale();
  reset();
}

double Environment::default_reward_scale() const {
  const auto f = static_cast<double>(config_.functions);
  double e_ref = config_.cu.static_kwh;
  for (std::size_t r = 0; r < config_.du_count; ++r) {
    const auto& du = config_.du_config(r);
    e_ref += du.static_kwh;
    for (std::size_t i = 0; i < config_.types.size(); ++i) {
      const double peak = data_.loads.max_load(r, i);
      e_ref += peak * f * du.dynamic_kwh;
      if (!config_.types[i].pinned_to_du) e_ref += peak * f * config_.cu.dynamic_kwh;
    }
  }
  const double denom = static_cast<double>(config_.reward_window + 1) * config_.tariff.max_price() * e_ref;
  return denom > 0.0 ? 1.0 / denom : 1.0;
}

void Environment::reset() {
  t_ = 0;
  batteries_.clear();
  for (std::size_t n = 0; n < node_count(); ++n) {
    const auto& cfg = node_config(n);
    batteries_.push_back({config_.initial_battery_fraction * cfg.battery_kwh, cfg.battery_kwh, 0.0});
  }
  window_.clear();
  total_opex_ = 0.0;
  gen_total_.assign(node_count(), 0.0);
  dispatch_total_.assign(node_count(), 0.0);
  last_ = StepRecord{};
  log_.clear();
}

const NodeEnergyConfig& Environment::node_config(std::size_t node) const {
  if (node > config_.du_count) throw std::out_of_range("unknown node " + std::to_string(node));
  return node == cu_index() ? config_.cu : config_.du_config(node);
}

double Environment::generation_per_unit(std::size_t node, std::size_t t) const {
  return data_.solar.at(node)->at(t);
}

double Environment::price(std::size_t t) const { return config_.tariff.price_at_hour(t % 24); }

double Environment::initial_battery(std::size_t node) const {
  return config_.initial_battery_fraction * node_config(node).battery_kwh;
}

Observation Environment::observe(std::size_t node) const {
  if (node >= node_count()) throw std::out_of_range("observe: unknown node " + std::to_string(node));
  Observation obs;
  obs.battery_kwh = batteries_[node].stored_kwh;
  obs.time_of_day = t_ % config_.day_length;
  const std::size_t dt = data_t(t_);
  if (node == cu_index()) {
    obs.loads.assign(config_.types.size(), 0.0);
    for (std::size_t r = 0; r < config_.du_count; ++r) {
      for (std::size_t i = 0; i < config_.types.size(); ++i) obs.loads[i] += data_.loads.at(r, i, dt);
    }
  } else {
    obs.loads = data_.loads.loads_at(node, dt);
  }
  return obs;
}

const StepRecord& Environment::step(std::span<const NodeAction> actions) {
  if (done()) throw StateError("episode already terminated at t=" + std::to_string(t_));
  if (actions.size() != node_count()) {
    throw std::invalid_argument("step: expected " + std::to_string(node_count()) + " actions, got " +
                                std::to_string(actions.size()));
  }
  const std::size_t levels = config_.dispatch_levels.size();
  for (std::size_t n = 0; n < node_count(); ++n) {
    const auto& a = actions[n];
    if (a.dispatch_level >= levels) {
      throw std::invalid_argument("step: dispatch level " + std::to_string(a.dispatch_level) + " at " +
                                  node_name(n, config_.du_count) + " outside the level set");
    }
    const std::size_t want = n == cu_index() ? 0 : splittable_.size();
    if (a.splits.size() != want) {
      throw std::invalid_argument("step: " + node_name(n, config_.du_count) + " needs " + std::to_string(want) +
                                  " split points, got " + std::to_string(a.splits.size()));
    }
  }

  // (1) splits, pinned types fully at the DU.
  const std::size_t dt = data_t(t_);
  std::vector<SplitVector> splits;
  std::vector<std::vector<double>> loads;
  splits.reserve(config_.du_count);
  loads.reserve(config_.du_count);
  for (std::size_t r = 0; r < config_.du_count; ++r) {
    std::vector<std::size_t> points(config_.types.size(), config_.functions);
    for (std::size_t k = 0; k < splittable_.size(); ++k) points[splittable_[k]] = actions[r].splits[k];
    splits.emplace_back(std::move(points));
    loads.push_back(data_.loads.loads_at(r, dt));
  }

  // (2) consumption per node.
  StepRecord rec;
  rec.t = t_;
  rec.price = price(t_);
  const std::size_t nodes = node_count();
  rec.energy_kwh.resize(nodes);
  for (std::size_t r = 0; r < config_.du_count; ++r) {
    rec.energy_kwh[r] = du_energy(loads[r], splits[r], config_.du_config(r), chain_);
  }
  rec.energy_kwh[cu_index()] = cu_energy(loads, splits, config_.cu, chain_);

  // (3) dispatch and (4) batteries.
  rec.dispatch_kwh.resize(nodes);
  rec.unstored_kwh.resize(nodes);
  rec.generation_kwh.resize(nodes);
  rec.battery_kwh.resize(nodes);
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto& cfg = node_config(n);
    const double g = generation_per_unit(n, t_);
    const double fmax = feasible_dispatch_max(batteries_[n], cfg.panel_size, g, rec.energy_kwh[n]);
    const double p = config_.dispatch_levels[actions[n].dispatch_level] * fmax;
    const double before = batteries_[n].unstored_total_kwh;
    batteries_[n] = battery_step(batteries_[n], p, cfg.panel_size, g);
    rec.dispatch_kwh[n] = p;
    rec.unstored_kwh[n] = batteries_[n].unstored_total_kwh - before;
    rec.generation_kwh[n] = cfg.panel_size * g;
    rec.battery_kwh[n] = batteries_[n].stored_kwh;
    gen_total_[n] += rec.generation_kwh[n];
    dispatch_total_[n] += p;
  }

  // (5) cost.
  std::vector<NodeDraw> du_draws(config_.du_count);
  for (std::size_t r = 0; r < config_.du_count; ++r) du_draws[r] = {rec.energy_kwh[r], rec.dispatch_kwh[r]};
  rec.opex = step_opex({rec.energy_kwh[cu_index()], rec.dispatch_kwh[cu_index()]}, du_draws, rec.price);

  total_opex_ += rec.opex;
  window_.push_back(rec.opex);
  while (window_.size() > config_.reward_window + 1) window_.pop_front();
  ++t_;
  if (logging_) log_.push_back(rec);
  last_ = std::move(rec);
  return last_;
}

double Environment::reward() const {
  double sum = 0.0;
  for (double o : window_) sum += o;
  return -reward_scale_ * sum;
}

std::string node_name(std::size_t node, std::size_t du_count) {
  return node == du_count ? std::string("cu") : "du" + std::to_string(node);
}

void write_episode_log(std::ostream& out, std::span<const StepRecord> records, std::size_t du_count) {
  out << "t,node,E_kwh,p_kwh,unstored_kwh,price,opex\n";
  for (const auto& rec : records) {
    for (std::size_t n = 0; n < rec.energy_kwh.size(); ++n) {
      const double node_opex = (rec.energy_kwh[n] - rec.dispatch_kwh[n]) * rec.price;
      out << rec.t << ',' << node_name(n, du_count) << ',' << csv::num(rec.energy_kwh[n]) << ','
          << csv::num(rec.dispatch_kwh[n]) << ',' << csv::num(rec.unstored_kwh[n]) << ','
          << csv::num(rec.price) << ',' << csv::num(node_opex) << '\n';
    }
  }
}

}  // namespace greenran
