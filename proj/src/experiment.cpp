#include "greenran/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "greenran/csv.hpp"
#include "greenran/error.hpp"

namespace greenran {

namespace {

// Runs fn(seed) for every seed as independent jobs; results in seed order.
template <class Fn>
auto for_each_seed(const std::vector<std::uint64_t>& seeds, Fn fn) {
  using R = decltype(fn(std::uint64_t{}));
  std::vector<std::future<R>> jobs;
  jobs.reserve(seeds.size());
  for (auto s : seeds) jobs.push_back(std::async(std::launch::async, fn, s));
  std::vector<R> out;
  out.reserve(seeds.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of nothing");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EvaluationRun run_policy(Environment env, const Policy& policy, PolicyKind kind, const ScenarioConfig& cfg) {
  env.set_logging(true);
  env.reset();
  while (!env.done()) env.step(policy(env));

  EvaluationRun run;
  run.summary.policy = kind;
  run.summary.city = cfg.solar.city;
  run.summary.traffic_rate = traffic_rate_label(cfg.traffic.intensity);
  run.summary.total_opex = env.total_opex();
  for (std::size_t n = 0; n < env.node_count(); ++n) {
    run.summary.renewable_used += env.total_dispatch(n);
    run.summary.unstored += env.battery(n).unstored_total_kwh;
    run.battery_delta.push_back(env.battery(n).stored_kwh - env.initial_battery(n));
    run.generation.push_back(env.total_generation(n));
  }
  run.log = env.log();
  return run;
}

Policy static_policy(PolicyKind kind) {
  return [kind](const Environment& env) { return baseline_actions(kind, env); };
}

Policy greedy_policy(std::shared_ptr<const AgentSet> agents) {
  return [agents = std::move(agents)](const Environment& env) { return agents->greedy_actions(env); };
}

Algorithm algorithm_for(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::RldfsQL: return Algorithm::QLearning;
    case PolicyKind::RldfsSarsa: return Algorithm::Sarsa;
    default: break;
  }
  throw ConfigError("policy.kind: " + std::string(to_string(kind)) + " is not a learned policy");
}

TrainingResult train_scenario(const ScenarioConfig& cfg, PolicyKind kind, std::uint64_t seed) {
  const auto algorithm = algorithm_for(kind);
  const Environment env = make_environment(cfg, seed);
  return train(env, algorithm, cfg.learning, cfg.discretization, seed);
}

OracleSolution solve_scenario_oracle(const ScenarioConfig& cfg, std::uint64_t seed) {
  OracleInstance inst;
  inst.env = cfg.env;
  inst.data = build_env_data(cfg, seed);
  inst.mode = cfg.oracle.mode;
  inst.grid_step = cfg.oracle.grid_step;
  inst.limits = cfg.oracle.limits;
  return solve_oracle(inst);
}

EvaluationRun evaluate_policy(const ScenarioConfig& cfg, PolicyKind kind, std::uint64_t seed) {
  if (kind == PolicyKind::DRAN || kind == PolicyKind::CRAN) {
    return run_policy(make_environment(cfg, seed), static_policy(kind), kind, cfg);
  }
  if (kind == PolicyKind::Oracle) {
    if (cfg.oracle.mode != OracleMode::Levels) {
      throw ConfigError("oracle.mode: only the levels oracle can be replayed as a policy");
    }
    auto sol = std::make_shared<const OracleSolution>(solve_scenario_oracle(cfg, seed));
    Policy replay = [sol](const Environment& env) { return sol->actions.at(env.time()); };
    return run_policy(make_environment(cfg, seed), replay, kind, cfg);
  }
  auto trained = std::make_shared<const AgentSet>(train_scenario(cfg, kind, seed).agents);
  return run_policy(make_environment(cfg, seed), greedy_policy(trained), kind, cfg);
}

std::string summary_header() { return "policy,city,traffic_rate,total_opex,renewable_used,unstored\n"; }

std::string summary_row(const EvaluationSummary& s) {
  std::ostringstream out;
  out << to_string(s.policy) << ',' << s.city << ',' << s.traffic_rate << ',' << csv::num(s.total_opex) << ','
      << csv::num(s.renewable_used) << ',' << csv::num(s.unstored) << '\n';
  return out.str();
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "panel") return SweepAxis::Panel;
  if (name == "battery") return SweepAxis::Battery;
  if (name == "traffic") return SweepAxis::Traffic;
  throw ConfigError("sweep axis '" + name + "': expected panel, battery or traffic");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Panel: return "panel";
    case SweepAxis::Battery: return "battery";
    case SweepAxis::Traffic: return "traffic";
  }
  return "?";
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& cfg, SweepAxis axis, double value) {
  if (!(value > 0.0)) throw ConfigError("sweep values must be positive");
  ScenarioConfig out = cfg;
  auto rescale = [&](double NodeEnergyConfig::*field) {
    const double base = cfg.env.du.*field;
    const double ratio = base > 0.0 ? cfg.env.cu.*field / base : 0.0;
    out.env.du.*field = value;
    out.env.cu.*field = ratio * value;
    for (auto& [r, node] : out.env.du_overrides) node.*field = value;
  };
  switch (axis) {
    case SweepAxis::Panel: rescale(&NodeEnergyConfig::panel_size); break;
    case SweepAxis::Battery: rescale(&NodeEnergyConfig::battery_kwh); break;
    case SweepAxis::Traffic: out.traffic.intensity = value; break;
  }
  return out;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::span<const double> values) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    const auto point = apply_sweep_value(cfg, axis, v);
    for (auto kind : cfg.sweep_policies) {
      auto totals = for_each_seed(cfg.run.seeds, [&](std::uint64_t seed) {
        if (kind == PolicyKind::Oracle) return solve_scenario_oracle(point, seed).total_opex;
        return evaluate_policy(point, kind, seed).summary.total_opex;
      });
      rows.push_back({axis, v, kind, median(std::move(totals))});
    }
  }
  return rows;
}

std::filesystem::path seed_dir(const ScenarioConfig& cfg, std::uint64_t seed) {
  return cfg.run.output_dir / ("seed_" + std::to_string(seed));
}

void cmd_train(const ScenarioConfig& cfg) {
  algorithm_for(cfg.policy);
  for_each_seed(cfg.run.seeds, [&](std::uint64_t seed) {
    const auto result = train_scenario(cfg, cfg.policy, seed);
    const auto dir = seed_dir(cfg, seed);
    const std::size_t dus = cfg.env.du_count;
    for (std::size_t n = 0; n < result.agents.size(); ++n) {
      std::ostringstream out;
      write_qtable(out, result.agents.tables[n]);
      csv::write_file_atomic(dir / ("qtable_" + node_name(n, dus) + ".csv"), out.str());
    }
    std::ostringstream curve;
    curve << "episode,total_opex\n";
    for (std::size_t e = 0; e < result.episode_opex.size(); ++e) {
      curve << e << ',' << csv::num(result.episode_opex[e]) << '\n';
    }
    csv::write_file_atomic(dir / "learning_curve.csv", curve.str());
    return 0;
  });
}

AgentSet load_agents(const ScenarioConfig& cfg, std::uint64_t seed, const std::filesystem::path& dir) {
  const Environment env = make_environment(cfg, seed);
  AgentSet agents = make_agents(env, cfg.discretization);
  for (std::size_t n = 0; n < agents.size(); ++n) {
    const auto path = dir / ("qtable_" + node_name(n, cfg.env.du_count) + ".csv");
    std::ifstream in(path);
    if (!in) throw DataError("missing Q-table " + path.string());
    agents.tables[n] = read_qtable(in, agents.tables[n].states(), agents.tables[n].actions(), path.string());
  }
  return agents;
}

void cmd_evaluate(const ScenarioConfig& cfg, const std::optional<std::filesystem::path>& artifacts) {
  if (is_learned(cfg.policy) && !artifacts) {
    throw ConfigError("policy.kind: " + std::string(to_string(cfg.policy)) +
                      " needs trained artifacts (run train first)");
  }
  auto rows = for_each_seed(cfg.run.seeds, [&](std::uint64_t seed) {
    EvaluationRun run;
    if (is_learned(cfg.policy)) {
      auto agents = std::make_shared<const AgentSet>(
          load_agents(cfg, seed, *artifacts / ("seed_" + std::to_string(seed))));
      run = run_policy(make_environment(cfg, seed), greedy_policy(agents), cfg.policy, cfg);
    } else {
      run = evaluate_policy(cfg, cfg.policy, seed);
    }
    const auto dir = seed_dir(cfg, seed);
    std::ostringstream log;
    write_episode_log(log, run.log, cfg.env.du_count);
    csv::write_file_atomic(dir / "episode_log.csv", log.str());
    const std::string row = summary_row(run.summary);
    csv::write_file_atomic(dir / "summary.csv", summary_header() + row);
    return row;
  });
  std::string all = summary_header();
  for (const auto& r : rows) all += r;
  csv::write_file_atomic(cfg.run.output_dir / "summary.csv", all);
}

void cmd_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::span<const double> values) {
  const auto rows = run_sweep(cfg, axis, values);
  std::ostringstream out;
  out << "axis,value,policy,total_opex\n";
  for (const auto& r : rows) {
    out << to_string(r.axis) << ',' << csv::num(r.value) << ',' << to_string(r.policy) << ','
        << csv::num(r.total_opex) << '\n';
  }
  csv::write_file_atomic(cfg.run.output_dir / ("sweep_" + to_string(axis) + ".csv"), out.str());
}

double cmd_oracle(const ScenarioConfig& cfg) {
  auto totals = for_each_seed(cfg.run.seeds, [&](std::uint64_t seed) {
    const auto sol = solve_scenario_oracle(cfg, seed);
    const auto dir = seed_dir(cfg, seed);
    std::ostringstream summary;
    summary << "mode,total_opex,peak_frontier\n"
            << (cfg.oracle.mode == OracleMode::Levels ? "levels" : "grid") << ',' << csv::num(sol.total_opex)
            << ',' << sol.peak_frontier << '\n';
    csv::write_file_atomic(dir / "oracle_summary.csv", summary.str());
    std::ostringstream sched;
    sched << "t,node,splits,dispatch_kwh\n";
    const std::size_t dus = cfg.env.du_count;
    for (std::size_t t = 0; t < sol.dispatch_kwh.size(); ++t) {
      for (std::size_t n = 0; n <= dus; ++n) {
        std::string splits;
        if (n < dus) {
          for (auto k : sol.splits[t][n]) splits += (splits.empty() ? "" : ";") + std::to_string(k);
        }
        sched << t << ',' << node_name(n, dus) << ',' << splits << ',' << csv::num(sol.dispatch_kwh[t][n]) << '\n';
      }
    }
    csv::write_file_atomic(dir / "oracle_schedule.csv", sched.str());
    return sol.total_opex;
  });
  return totals.front();
}

}  // namespace greenran
