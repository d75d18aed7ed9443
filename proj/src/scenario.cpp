#include "greenran/scenario.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "greenran/error.hpp"
#include "greenran/rng.hpp"

namespace greenran {

namespace {

using nlohmann::json;

// Keys consumed per JSON object, checked once parsing is over so that
// leftovers can be reported as unknown fields.
struct UsageLog {
  struct Entry {
    const json* object;
    std::string path;
    std::set<std::string> used;
  };
  std::vector<std::unique_ptr<Entry>> entries;

  void check() const {
    for (const auto& e : entries) {
      for (auto it = e->object->begin(); it != e->object->end(); ++it) {
        if (!e->used.count(it.key())) {
          throw ConfigError((e->path.empty() ? it.key() : e->path + "." + it.key()) + ": unknown field");
        }
      }
    }
  }
};

// A JSON object being read, with its dotted path for error messages.
class Section {
 public:
  Section(const json& j, std::string path, UsageLog& log) : j_(j), path_(std::move(path)), log_(log) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
    log_.entries.push_back(std::make_unique<UsageLog::Entry>(UsageLog::Entry{&j_, path_, {}}));
    used_ = &log_.entries.back()->used;
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  std::optional<Section> section(const std::string& key) {
    if (!has(key)) return std::nullopt;
    used_->insert(key);
    return std::optional<Section>(std::in_place, j_.at(key), field(key), log_);
  }

  const json* raw(const std::string& key) {
    if (!has(key)) return nullptr;
    used_->insert(key);
    return &j_.at(key);
  }

  void read(const std::string& key, double& out) {
    if (auto* v = raw(key)) {
      if (!v->is_number()) throw ConfigError(field(key) + ": expected a number");
      out = v->get<double>();
    }
  }
  void read(const std::string& key, std::size_t& out) {
    if (auto* v = raw(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        throw ConfigError(field(key) + ": expected a non-negative integer");
      }
      out = v->get<std::size_t>();
    }
  }
  void read(const std::string& key, bool& out) {
    if (auto* v = raw(key)) {
      if (!v->is_boolean()) throw ConfigError(field(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }
  void read(const std::string& key, std::string& out) {
    if (auto* v = raw(key)) {
      if (!v->is_string()) throw ConfigError(field(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }
  void read(const std::string& key, std::vector<double>& out) {
    if (auto* v = raw(key)) {
      if (!v->is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
        out.push_back(e.get<double>());
      }
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "<root>" : path_; }
  UsageLog& log() { return log_; }

 private:
  const json& j_;
  std::string path_;
  UsageLog& log_;
  std::set<std::string>* used_ = nullptr;
};

void read_node(Section& s, NodeEnergyConfig& cfg) {
  s.read("static_kwh", cfg.static_kwh);
  s.read("dynamic_kwh", cfg.dynamic_kwh);
  s.read("panel_size", cfg.panel_size);
  s.read("battery_kwh", cfg.battery_kwh);
}

void read_env(Section& s, ScenarioConfig& cfg) {
  auto& env = cfg.env;
  s.read("du_count", env.du_count);
  s.read("functions", env.functions);
  s.read("horizon", env.horizon);
  s.read("day_length", env.day_length);
  if (auto t = s.section("tariff")) {
    if (t->has("hourly")) {
      std::vector<double> prices;
      t->read("hourly", prices);
      try {
        env.tariff = TariffSchedule(prices);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(t->field("hourly") + ": " + e.what());
      }
    } else {
      double night = 0.03, day = 0.07, peak = 0.11;
      t->read("night", night);
      t->read("day", day);
      t->read("peak", peak);
      if (!(night >= 0.0 && day >= 0.0 && peak >= 0.0)) throw ConfigError(t->where() + ": prices must be >= 0");
      env.tariff = TariffSchedule::three_band(night, day, peak);
    }
  }
  if (auto c = s.section("cu")) read_node(*c, env.cu);
  if (auto d = s.section("du")) read_node(*d, env.du);
  if (const json* o = s.raw("du_overrides")) {
    if (!o->is_object()) throw ConfigError("env.du_overrides: expected an object keyed by DU index");
    for (auto it = o->begin(); it != o->end(); ++it) {
      std::size_t r = 0;
      try {
        std::size_t pos = 0;
        r = std::stoul(it.key(), &pos);
        if (pos != it.key().size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ConfigError("env.du_overrides." + it.key() + ": key must be a DU index");
      }
      NodeEnergyConfig node = env.du;
      Section ns(it.value(), "env.du_overrides." + it.key(), s.log());
      read_node(ns, node);
      env.du_overrides[r] = node;
    }
  }
  s.read("reward_window", env.reward_window);
  if (const json* v = s.raw("reward_scale")) {
    if (v->is_null()) {
      env.reward_scale.reset();
    } else if (v->is_number()) {
      env.reward_scale = v->get<double>();
    } else {
      throw ConfigError("env.reward_scale: expected a number or null");
    }
  }
  s.read("initial_battery_fraction", env.initial_battery_fraction);
  s.read("dispatch_levels", env.dispatch_levels);
}

void read_traffic(Section& s, ScenarioConfig& cfg) {
  auto& tr = cfg.traffic;
  s.read("nu", tr.nu);
  s.read("phase_min", tr.phase_min);
  s.read("phase_max", tr.phase_max);
  s.read("phases", tr.phases);
  s.read("noise_sigma", tr.noise_sigma);
  s.read("seasonal_amplitude", tr.seasonal_amplitude);
  s.read("intensity", tr.intensity);
  if (const json* types = s.raw("types")) {
    if (!types->is_array() || types->empty()) throw ConfigError("traffic.types: expected a non-empty array");
    cfg.env.types.clear();
    for (std::size_t k = 0; k < types->size(); ++k) {
      Section ts((*types)[k], "traffic.types[" + std::to_string(k) + "]", s.log());
      std::string name;
      TrafficType ty;
      ts.read("name", name);
      try {
        ty.id = traffic_kind_from_string(name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(ts.field("name") + ": " + e.what());
      }
      ts.read("pinned", ty.pinned_to_du);
      ts.read("load_scale", ty.load_scale);
      cfg.env.types.push_back(ty);
    }
  }
}

void read_solar(Section& s, ScenarioConfig& cfg) {
  auto& so = cfg.solar;
  s.read("city", so.city);
  std::string trace;
  s.read("trace", trace);
  if (!trace.empty()) so.trace = trace;
  if (auto syn = s.section("synthetic")) {
    syn->read("peak_kwh", so.synthetic.peak_kwh);
    syn->read("sunrise", so.synthetic.sunrise);
    syn->read("sunset", so.synthetic.sunset);
    syn->read("cloud_sigma", so.synthetic.cloud_sigma);
  }
  if (const json* nodes = s.raw("nodes")) {
    if (!nodes->is_object()) throw ConfigError("solar.nodes: expected an object of node -> trace path");
    for (auto it = nodes->begin(); it != nodes->end(); ++it) {
      if (!it.value().is_string()) throw ConfigError("solar.nodes." + it.key() + ": expected a path");
      so.node_traces[it.key()] = it.value().get<std::string>();
    }
  }
}

PolicyKind read_policy_name(const std::string& name, const std::string& field) {
  try {
    return policy_kind_from_string(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

void read_policy(Section& s, ScenarioConfig& cfg) {
  std::string kind(to_string(cfg.policy));
  s.read("kind", kind);
  cfg.policy = read_policy_name(kind, s.field("kind"));
  if (auto l = s.section("learning")) {
    auto& lp = cfg.learning;
    l->read("episodes", lp.episodes);
    l->read("alpha", lp.alpha);
    l->read("gamma", lp.gamma);
    l->read("epsilon_start", lp.epsilon_start);
    l->read("epsilon_decay", lp.epsilon_decay);
    l->read("epsilon_floor", lp.epsilon_floor);
    std::string schedule = lp.schedule == EpsilonSchedule::PerStep ? "per_step" : "per_episode";
    l->read("epsilon_schedule", schedule);
    if (schedule == "per_step") {
      lp.schedule = EpsilonSchedule::PerStep;
    } else if (schedule == "per_episode") {
      lp.schedule = EpsilonSchedule::PerEpisode;
    } else {
      throw ConfigError(l->field("epsilon_schedule") + ": expected per_step or per_episode");
    }
    l->read("episode_length", lp.episode_length);
    l->read("reset_each_episode", lp.reset_each_episode);
  }
  if (auto d = s.section("discretization")) {
    auto& ds = cfg.discretization;
    d->read("battery_bins", ds.battery_bins);
    d->read("load_bins", ds.load_bins);
    d->read("time_values", ds.time_values);
    d->read("load_thresholds", ds.load_thresholds);
  }
}

void read_run(Section& s, ScenarioConfig& cfg) {
  if (const json* seeds = s.raw("seeds")) {
    if (!seeds->is_array() || seeds->empty()) throw ConfigError("run.seeds: expected a non-empty array");
    cfg.run.seeds.clear();
    for (const auto& v : *seeds) {
      if (!v.is_number_unsigned()) throw ConfigError("run.seeds: seeds must be non-negative integers");
      cfg.run.seeds.push_back(v.get<std::uint64_t>());
    }
  }
  std::string out;
  s.read("output_dir", out);
  if (!out.empty()) cfg.run.output_dir = out;
}

void read_oracle(Section& s, ScenarioConfig& cfg) {
  auto& o = cfg.oracle;
  std::string mode = o.mode == OracleMode::Levels ? "levels" : "grid";
  s.read("mode", mode);
  if (mode == "levels") {
    o.mode = OracleMode::Levels;
  } else if (mode == "grid") {
    o.mode = OracleMode::Grid;
  } else {
    throw ConfigError("oracle.mode: expected levels or grid");
  }
  s.read("grid_step", o.grid_step);
  s.read("max_horizon", o.limits.max_horizon);
  s.read("max_dus", o.limits.max_dus);
  s.read("max_functions", o.limits.max_functions);
  s.read("max_frontier", o.limits.max_frontier);
}

json node_json(const NodeEnergyConfig& n) {
  return {{"static_kwh", n.static_kwh}, {"dynamic_kwh", n.dynamic_kwh}, {"panel_size", n.panel_size},
          {"battery_kwh", n.battery_kwh}};
}

}  // namespace

void ScenarioConfig::validate() const {
  env.validate();
  traffic.validate();
  learning.validate();
  discretization.validate();
  if (run.seeds.empty()) throw ConfigError("run.seeds: at least one seed required");
  if (!(oracle.grid_step > 0.0)) throw ConfigError("oracle.grid_step: must be > 0");
  if (!(solar.synthetic.sunrise >= 0.0 && solar.synthetic.sunrise < solar.synthetic.sunset &&
        solar.synthetic.sunset <= 24.0)) {
    throw ConfigError("solar.synthetic: need 0 <= sunrise < sunset <= 24");
  }
  if (!(solar.synthetic.peak_kwh >= 0.0)) throw ConfigError("solar.synthetic.peak_kwh: must be >= 0");
  if (!(solar.synthetic.cloud_sigma >= 0.0)) throw ConfigError("solar.synthetic.cloud_sigma: must be >= 0");
  for (const auto& [node, path] : solar.node_traces) {
    bool known = node == "cu";
    for (std::size_t r = 0; r < env.du_count && !known; ++r) known = node == node_name(r, env.du_count);
    if (!known) throw ConfigError("solar.nodes." + node + ": no such node");
  }
  if (sweep_policies.empty()) throw ConfigError("sweep.policies: at least one policy required");
}

ScenarioConfig parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  cfg.base_dir = base_dir;
  UsageLog usage;
  {
    Section s(root, "", usage);
    if (auto env = s.section("env")) read_env(*env, cfg);
    if (auto tr = s.section("traffic")) read_traffic(*tr, cfg);
    if (auto so = s.section("solar")) read_solar(*so, cfg);
    if (auto po = s.section("policy")) read_policy(*po, cfg);
    if (auto ru = s.section("run")) read_run(*ru, cfg);
    if (auto orc = s.section("oracle")) read_oracle(*orc, cfg);
    if (auto sw = s.section("sweep")) {
      if (const json* p = sw->raw("policies")) {
        if (!p->is_array()) throw ConfigError("sweep.policies: expected an array of policy names");
        cfg.sweep_policies.clear();
        for (const auto& v : *p) {
          if (!v.is_string()) throw ConfigError("sweep.policies: expected policy names");
          cfg.sweep_policies.push_back(read_policy_name(v.get<std::string>(), "sweep.policies"));
        }
      }
    }
  }
  usage.check();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  json j;
  const auto& env = cfg.env;
  j["env"] = {{"du_count", env.du_count},
              {"functions", env.functions},
              {"horizon", env.horizon},
              {"day_length", env.day_length},
              {"tariff", {{"hourly", std::vector<double>(env.tariff.prices().begin(), env.tariff.prices().end())}}},
              {"cu", node_json(env.cu)},
              {"du", node_json(env.du)},
              {"reward_window", env.reward_window},
              {"initial_battery_fraction", env.initial_battery_fraction},
              {"dispatch_levels", env.dispatch_levels}};
  j["env"]["reward_scale"] = env.reward_scale ? json(*env.reward_scale) : json(nullptr);
  for (const auto& [r, n] : env.du_overrides) j["env"]["du_overrides"][std::to_string(r)] = node_json(n);
  json types = json::array();
  for (const auto& ty : env.types) {
    types.push_back({{"name", std::string(to_string(ty.id))}, {"pinned", ty.pinned_to_du}, {"load_scale", ty.load_scale}});
  }
  const auto& tr = cfg.traffic;
  j["traffic"] = {{"nu", tr.nu},
                  {"phase_min", tr.phase_min},
                  {"phase_max", tr.phase_max},
                  {"noise_sigma", tr.noise_sigma},
                  {"seasonal_amplitude", tr.seasonal_amplitude},
                  {"intensity", tr.intensity},
                  {"types", types}};
  if (!tr.phases.empty()) j["traffic"]["phases"] = tr.phases;
  j["solar"] = {{"city", cfg.solar.city},
                {"synthetic",
                 {{"peak_kwh", cfg.solar.synthetic.peak_kwh},
                  {"sunrise", cfg.solar.synthetic.sunrise},
                  {"sunset", cfg.solar.synthetic.sunset},
                  {"cloud_sigma", cfg.solar.synthetic.cloud_sigma}}}};
  if (cfg.solar.trace) j["solar"]["trace"] = cfg.solar.trace->string();
  for (const auto& [node, path] : cfg.solar.node_traces) j["solar"]["nodes"][node] = path.string();
  const auto& lp = cfg.learning;
  j["policy"] = {{"kind", std::string(to_string(cfg.policy))},
                 {"learning",
                  {{"episodes", lp.episodes},
                   {"alpha", lp.alpha},
                   {"gamma", lp.gamma},
                   {"epsilon_start", lp.epsilon_start},
                   {"epsilon_decay", lp.epsilon_decay},
                   {"epsilon_floor", lp.epsilon_floor},
                   {"epsilon_schedule", lp.schedule == EpsilonSchedule::PerStep ? "per_step" : "per_episode"},
                   {"episode_length", lp.episode_length},
                   {"reset_each_episode", lp.reset_each_episode}}},
                 {"discretization",
                  {{"battery_bins", cfg.discretization.battery_bins},
                   {"load_bins", cfg.discretization.load_bins},
                   {"time_values", cfg.discretization.time_values}}}};
  if (!cfg.discretization.load_thresholds.empty()) {
    j["policy"]["discretization"]["load_thresholds"] = cfg.discretization.load_thresholds;
  }
  j["run"] = {{"seeds", cfg.run.seeds}, {"output_dir", cfg.run.output_dir.string()}};
  j["oracle"] = {{"mode", cfg.oracle.mode == OracleMode::Levels ? "levels" : "grid"},
                 {"grid_step", cfg.oracle.grid_step},
                 {"max_horizon", cfg.oracle.limits.max_horizon},
                 {"max_dus", cfg.oracle.limits.max_dus},
                 {"max_functions", cfg.oracle.limits.max_functions},
                 {"max_frontier", cfg.oracle.limits.max_frontier}};
  json pols = json::array();
  for (auto p : cfg.sweep_policies) pols.push_back(std::string(to_string(p)));
  j["sweep"] = {{"policies", pols}};
  return j.dump(2);
}

std::string traffic_rate_label(double intensity) {
  if (intensity == 0.5) return "low";
  if (intensity == 1.0) return "medium";
  if (intensity == 1.5) return "high";
  std::ostringstream out;
  out << intensity;
  return out.str();
}

EnvData build_env_data(const ScenarioConfig& cfg, std::uint64_t seed) {
  const auto& env = cfg.env;
  TrafficProfileConfig traffic = cfg.traffic;
  traffic.seed = stream_seed(seed, "traffic");
  EnvData data;
  data.loads = generate_load_matrix(traffic, env.horizon, env.du_count, env.types);

  auto resolve = [&](const std::filesystem::path& p) { return p.is_absolute() ? p : cfg.base_dir / p; };
  std::shared_ptr<const SolarTrace> city;
  if (cfg.solar.trace) {
    auto trace = load_trace(resolve(*cfg.solar.trace), env.horizon);
    trace.site_name = cfg.solar.city;
    city = std::make_shared<const SolarTrace>(std::move(trace));
  } else {
    city = std::make_shared<const SolarTrace>(
        synthetic_trace(cfg.solar.synthetic, env.horizon, seed, cfg.solar.city));
  }
  data.solar.assign(env.du_count + 1, city);
  for (const auto& [node, path] : cfg.solar.node_traces) {
    auto trace = std::make_shared<const SolarTrace>(load_trace(resolve(path), env.horizon));
    if (node == "cu") {
      data.solar[env.du_count] = trace;
    } else {
      for (std::size_t r = 0; r < env.du_count; ++r) {
        if (node == node_name(r, env.du_count)) data.solar[r] = trace;
      }
    }
  }
  return data;
}

Environment make_environment(const ScenarioConfig& cfg, std::uint64_t seed) {
  return Environment(cfg.env, build_env_data(cfg, seed));
}

}  // namespace greenran
