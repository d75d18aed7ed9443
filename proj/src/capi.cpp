#include "greenran/greenran.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "greenran/error.hpp"
#include "greenran/experiment.hpp"

struct grn_scenario {
  greenran::ScenarioConfig cfg;
};

struct grn_env {
  greenran::Environment env;
};

namespace {

thread_local std::string last_error;

grn_status fail(grn_status code, const char* what) {
  last_error = what;
  return code;
}

// Maps the C++ exception hierarchy onto status codes.
template <class Fn>
grn_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return GRN_OK;
  } catch (const greenran::ConfigError& e) {
    return fail(GRN_ERR_CONFIG, e.what());
  } catch (const greenran::DataError& e) {
    return fail(GRN_ERR_DATA, e.what());
  } catch (const greenran::StateError& e) {
    return fail(GRN_ERR_STATE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GRN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(GRN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GRN_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(GRN_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(GRN_ERR_RUNTIME, "unknown error");
  }
}

#define GRN_REQUIRE(cond, msg) \
  if (!(cond)) return fail(GRN_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* grn_last_error(void) { return last_error.c_str(); }

const char* grn_version(void) { return "0.1.0"; }

grn_status grn_scenario_default(grn_scenario** out) {
  GRN_REQUIRE(out, "out is null");
  return guarded([&] { *out = new grn_scenario{}; });
}

grn_status grn_scenario_load(const char* path, grn_scenario** out) {
  GRN_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new grn_scenario{greenran::load_scenario(path)}; });
}

grn_status grn_scenario_parse(const char* json, const char* base_dir, grn_scenario** out) {
  GRN_REQUIRE(json && out, "null argument");
  return guarded([&] { *out = new grn_scenario{greenran::parse_scenario(json, base_dir ? base_dir : ".")}; });
}

void grn_scenario_free(grn_scenario* s) { delete s; }

grn_status grn_scenario_set_seeds(grn_scenario* s, const uint64_t* seeds, size_t count) {
  GRN_REQUIRE(s && seeds && count > 0, "need a scenario and at least one seed");
  return guarded([&] { s->cfg.run.seeds.assign(seeds, seeds + count); });
}

grn_status grn_scenario_set_output_dir(grn_scenario* s, const char* dir) {
  GRN_REQUIRE(s && dir && *dir, "need a scenario and a directory");
  return guarded([&] { s->cfg.run.output_dir = dir; });
}

grn_status grn_scenario_set_solar_trace(grn_scenario* s, const char* path) {
  GRN_REQUIRE(s && path && *path, "need a scenario and a path");
  return guarded([&] {
    s->cfg.solar.trace = std::filesystem::path(path);
    s->cfg.solar.node_traces.clear();
    if (s->cfg.solar.city == "synthetic") s->cfg.solar.city = std::filesystem::path(path).stem().string();
  });
}

grn_status grn_scenario_set_solar_synthetic(grn_scenario* s, double peak_kwh, double cloud_sigma) {
  GRN_REQUIRE(s, "scenario is null");
  return guarded([&] {
    if (!(peak_kwh >= 0.0)) throw greenran::ConfigError("solar.synthetic.peak_kwh: must be >= 0");
    if (!(cloud_sigma >= 0.0)) throw greenran::ConfigError("solar.synthetic.cloud_sigma: must be >= 0");
    s->cfg.solar.trace.reset();
    s->cfg.solar.node_traces.clear();
    s->cfg.solar.city = "synthetic";
    s->cfg.solar.synthetic.peak_kwh = peak_kwh;
    s->cfg.solar.synthetic.cloud_sigma = cloud_sigma;
  });
}

grn_status grn_scenario_set_policy(grn_scenario* s, const char* policy) {
  GRN_REQUIRE(s && policy, "null argument");
  return guarded([&] {
    try {
      s->cfg.policy = greenran::policy_kind_from_string(policy);
    } catch (const std::invalid_argument& e) {
      throw greenran::ConfigError(std::string("policy.kind: ") + e.what());
    }
  });
}

grn_status grn_scenario_to_json(const grn_scenario* s, char* buf, size_t cap, size_t* needed) {
  GRN_REQUIRE(s && (buf || cap == 0), "null argument");
  return guarded([&] {
    const std::string text = greenran::scenario_to_json(s->cfg);
    if (needed) *needed = text.size() + 1;
    if (cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

grn_status grn_train(const grn_scenario* s) {
  GRN_REQUIRE(s, "scenario is null");
  return guarded([&] {
    s->cfg.validate();
    greenran::cmd_train(s->cfg);
  });
}

grn_status grn_evaluate(const grn_scenario* s, const char* artifacts_dir) {
  GRN_REQUIRE(s, "scenario is null");
  return guarded([&] {
    s->cfg.validate();
    std::optional<std::filesystem::path> artifacts;
    if (artifacts_dir) artifacts = std::filesystem::path(artifacts_dir);
    greenran::cmd_evaluate(s->cfg, artifacts);
  });
}

grn_status grn_sweep(const grn_scenario* s, const char* axis, const double* values, size_t count) {
  GRN_REQUIRE(s && axis && values && count > 0, "need a scenario, an axis and at least one value");
  return guarded([&] {
    s->cfg.validate();
    greenran::cmd_sweep(s->cfg, greenran::sweep_axis_from_string(axis), std::span<const double>(values, count));
  });
}

grn_status grn_oracle(const grn_scenario* s, double* total_opex) {
  GRN_REQUIRE(s, "scenario is null");
  return guarded([&] {
    s->cfg.validate();
    const double v = greenran::cmd_oracle(s->cfg);
    if (total_opex) *total_opex = v;
  });
}

grn_status grn_env_create(const grn_scenario* s, uint64_t seed, grn_env** out) {
  GRN_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = new grn_env{greenran::make_environment(s->cfg, seed)}; });
}

void grn_env_free(grn_env* e) { delete e; }

grn_status grn_env_reset(grn_env* e) {
  GRN_REQUIRE(e, "env is null");
  return guarded([&] { e->env.reset(); });
}

size_t grn_env_node_count(const grn_env* e) { return e ? e->env.node_count() : 0; }

size_t grn_env_split_width(const grn_env* e) { return e ? e->env.config().splittable_types().size() : 0; }

size_t grn_env_time(const grn_env* e) { return e ? e->env.time() : 0; }

int grn_env_done(const grn_env* e) { return e ? (e->env.done() ? 1 : 0) : 1; }

grn_status grn_env_step(grn_env* e, const uint8_t* splits, size_t split_count, const size_t* levels,
                        size_t level_count, double* opex) {
  GRN_REQUIRE(e && levels, "null argument");
  return guarded([&] {
    const size_t width = e->env.config().splittable_types().size();
    const size_t dus = e->env.config().du_count;
    if (split_count != dus * width) throw std::invalid_argument("split_count must be du_count * split_width");
    if (split_count > 0 && !splits) throw std::invalid_argument("splits is null");
    if (level_count != e->env.node_count()) throw std::invalid_argument("level_count must equal node_count");
    std::vector<greenran::NodeAction> actions(e->env.node_count());
    for (size_t r = 0; r < dus; ++r) actions[r].splits.assign(splits + r * width, splits + (r + 1) * width);
    for (size_t n = 0; n < level_count; ++n) actions[n].dispatch_level = levels[n];
    const auto& rec = e->env.step(actions);
    if (opex) *opex = rec.opex;
  });
}

grn_status grn_env_step_policy(grn_env* e, const char* policy, double* opex) {
  GRN_REQUIRE(e && policy, "null argument");
  return guarded([&] {
    const auto kind = greenran::policy_kind_from_string(policy);
    if (kind != greenran::PolicyKind::DRAN && kind != greenran::PolicyKind::CRAN) {
      throw std::invalid_argument("only dran and cran can be stepped without state");
    }
    const auto& rec = e->env.step(greenran::baseline_actions(kind, e->env));
    if (opex) *opex = rec.opex;
  });
}

grn_status grn_env_observe(const grn_env* e, size_t node, grn_observation* out, double* loads, size_t load_cap) {
  GRN_REQUIRE(e && out && (loads || load_cap == 0), "null argument");
  return guarded([&] {
    const auto obs = e->env.observe(node);
    if (obs.loads.size() > load_cap) throw std::invalid_argument("load buffer too small");
    out->battery_kwh = obs.battery_kwh;
    out->time_of_day = obs.time_of_day;
    out->load_count = obs.loads.size();
    std::copy(obs.loads.begin(), obs.loads.end(), loads);
  });
}

grn_status grn_env_reward(const grn_env* e, double* out) {
  GRN_REQUIRE(e && out, "null argument");
  return guarded([&] { *out = e->env.reward(); });
}

grn_status grn_env_total_opex(const grn_env* e, double* out) {
  GRN_REQUIRE(e && out, "null argument");
  return guarded([&] { *out = e->env.total_opex(); });
}

}  // extern "C"
