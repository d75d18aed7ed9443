#include "fixtures.hpp"

#include <random>

namespace greenran::testing {

EnvConfig tiny_config(const TinySpec& spec) {
  EnvConfig cfg;
  cfg.du_count = spec.du_count;
  cfg.functions = spec.functions;
  cfg.horizon = spec.horizon;
  cfg.cu = spec.cu;
  cfg.du = spec.du;
  cfg.tariff = spec.tariff;
  cfg.initial_battery_fraction = spec.initial_battery_fraction;
  return cfg;
}

EnvData tiny_data(const TinySpec& spec) {
  const auto types = default_traffic_types();
  LoadMatrix loads(spec.du_count, types.size(), spec.horizon);
  for (std::size_t r = 0; r < spec.loads.size(); ++r) {
    for (std::size_t k = 0; k < spec.loads[r].size(); ++k) {
      for (std::size_t t = 0; t < spec.loads[r][k].size(); ++t) loads.set(r, k, t, spec.loads[r][k][t]);
    }
  }
  return EnvData::with_shared_solar(std::move(loads), SolarTrace{"test", spec.solar});
}

Environment tiny_env(const TinySpec& spec) { return Environment(tiny_config(spec), tiny_data(spec)); }

TinySpec random_spec(std::uint64_t seed, std::size_t du_count, std::size_t functions, std::size_t horizon,
                     double max_load, double max_solar) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> load(0.0, max_load);
  std::uniform_real_distribution<double> sun(0.0, max_solar);
  TinySpec spec;
  spec.du_count = du_count;
  spec.functions = functions;
  spec.horizon = horizon;
  spec.loads.assign(du_count, std::vector<std::vector<double>>(2, std::vector<double>(horizon)));
  for (auto& du : spec.loads) {
    for (auto& per_type : du) {
      for (auto& v : per_type) v = load(rng);
    }
  }
  spec.solar.resize(horizon);
  for (auto& g : spec.solar) g = sun(rng);
  // Small batteries so that clipping and empty batteries both occur.
  spec.du.battery_kwh = 10.0;
  spec.cu.battery_kwh = 20.0;
  return spec;
}

std::vector<std::vector<NodeAction>> all_joint_actions(const EnvConfig& cfg) {
  const std::size_t splittable = cfg.splittable_types().size();
  const std::size_t levels = cfg.dispatch_levels.size();
  std::vector<NodeAction> du_actions;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < splittable; ++k) combos *= cfg.functions + 1;
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<std::size_t> pts(splittable);
    std::size_t rest = c;
    for (std::size_t k = 0; k < splittable; ++k) {
      pts[k] = rest % (cfg.functions + 1);
      rest /= cfg.functions + 1;
    }
    for (std::size_t l = 0; l < levels; ++l) du_actions.push_back({pts, l});
  }
  std::vector<std::vector<NodeAction>> out{{}};
  for (std::size_t r = 0; r < cfg.du_count; ++r) {
    std::vector<std::vector<NodeAction>> grown;
    for (const auto& prefix : out) {
      for (const auto& a : du_actions) {
        auto next = prefix;
        next.push_back(a);
        grown.push_back(std::move(next));
      }
    }
    out = std::move(grown);
  }
  std::vector<std::vector<NodeAction>> joint;
  for (const auto& prefix : out) {
    for (std::size_t l = 0; l < levels; ++l) {
      auto next = prefix;
      next.push_back({{}, l});
      joint.push_back(std::move(next));
    }
  }
  return joint;
}

std::vector<NodeAction> random_joint_action(const EnvConfig& cfg, std::mt19937_64& rng) {
  const std::size_t splittable = cfg.splittable_types().size();
  std::uniform_int_distribution<std::size_t> split(0, cfg.functions);
  std::uniform_int_distribution<std::size_t> level(0, cfg.dispatch_levels.size() - 1);
  std::vector<NodeAction> joint(cfg.du_count + 1);
  for (std::size_t r = 0; r < cfg.du_count; ++r) {
    for (std::size_t k = 0; k < splittable; ++k) joint[r].splits.push_back(split(rng));
    joint[r].dispatch_level = level(rng);
  }
  joint.back().dispatch_level = level(rng);
  return joint;
}

ScenarioConfig miniature_scenario() {
  ScenarioConfig cfg;
  cfg.env.du_count = 1;
  cfg.env.functions = 2;
  cfg.env.horizon = 24;
  cfg.traffic.noise_sigma = 0.0;
  cfg.solar.synthetic.cloud_sigma = 0.0;
  cfg.learning.episodes = 2000;
  cfg.learning.reset_each_episode = true;
  cfg.sweep_policies = {PolicyKind::Oracle, PolicyKind::RldfsQL, PolicyKind::RldfsSarsa};
  return cfg;
}

}  // namespace greenran::testing
