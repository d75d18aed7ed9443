// Command-line driver; talks to the simulator only through the C API.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "greenran/greenran.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

int exit_code(grn_status st) {
  switch (st) {
    case GRN_OK: return 0;
    case GRN_ERR_CONFIG: return kExitConfig;
    case GRN_ERR_DATA: return kExitData;
    default: return kExitRuntime;
  }
}

int report(grn_status st, const char* what) {
  if (st != GRN_OK) std::fprintf(stderr, "greenran %s: %s\n", what, grn_last_error());
  return exit_code(st);
}

struct ScenarioHandle {
  grn_scenario* p = nullptr;
  ~ScenarioHandle() { grn_scenario_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solar-powered RAN function-split simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  std::string solar_path;
  bool solar_synthetic = false;
  double solar_peak = 0.3;
  double solar_sigma = 0.0;
  std::string policy;

  app.add_option("--config", config_path, "Scenario file (JSON)")->check(CLI::ExistingFile);
  app.add_option("--seed", seeds, "Seed; repeat for several")->delimiter(',');
  app.add_option("--out", out_dir, "Output directory");
  auto* solar_opt = app.add_option("--solar", solar_path, "Solar trace CSV (hour,kwh_per_unit)");
  auto* synth_flag = app.add_flag("--solar-synthetic", solar_synthetic, "Use the synthetic solar generator");
  app.add_option("--solar-peak", solar_peak, "Synthetic peak kWh per panel unit")->needs(synth_flag);
  app.add_option("--solar-cloud-sigma", solar_sigma, "Synthetic cloud log-sigma")->needs(synth_flag);
  solar_opt->excludes(synth_flag);
  app.add_option("--policy", policy, "dran, cran, rldfs_ql, rldfs_sarsa or oracle");

  auto* train = app.add_subcommand("train", "Train tabular agents; writes Q-tables and learning curves");
  auto* evaluate = app.add_subcommand("evaluate", "Run a frozen policy; writes step logs and summaries");
  std::string artifacts;
  evaluate->add_option("--artifacts", artifacts, "Output directory of a train run (learned policies)");
  auto* sweep = app.add_subcommand("sweep", "Sweep panel, battery or traffic; writes sweep_<axis>.csv");
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--axis", axis, "panel, battery or traffic")
      ->required()
      ->check(CLI::IsMember({"panel", "battery", "traffic"}));
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  auto* oracle = app.add_subcommand("oracle", "Exact optimum of a small instance");

  for (auto* sub : {train, evaluate, sweep, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  ScenarioHandle sc;
  grn_status st = config_path.empty() ? grn_scenario_default(&sc.p) : grn_scenario_load(config_path.c_str(), &sc.p);
  if (st != GRN_OK) return report(st, "config");
  if (!seeds.empty() && (st = grn_scenario_set_seeds(sc.p, seeds.data(), seeds.size())) != GRN_OK) {
    return report(st, "--seed");
  }
  if (!out_dir.empty() && (st = grn_scenario_set_output_dir(sc.p, out_dir.c_str())) != GRN_OK) {
    return report(st, "--out");
  }
  if (!solar_path.empty() && (st = grn_scenario_set_solar_trace(sc.p, solar_path.c_str())) != GRN_OK) {
    return report(st, "--solar");
  }
  if (solar_synthetic && (st = grn_scenario_set_solar_synthetic(sc.p, solar_peak, solar_sigma)) != GRN_OK) {
    return report(st, "--solar-synthetic");
  }
  if (!policy.empty() && (st = grn_scenario_set_policy(sc.p, policy.c_str())) != GRN_OK) {
    return report(st, "--policy");
  }

  if (train->parsed()) return report(grn_train(sc.p), "train");
  if (evaluate->parsed()) {
    return report(grn_evaluate(sc.p, artifacts.empty() ? nullptr : artifacts.c_str()), "evaluate");
  }
  if (sweep->parsed()) return report(grn_sweep(sc.p, axis.c_str(), values.data(), values.size()), "sweep");
  if (oracle->parsed()) {
    double opex = 0.0;
    st = grn_oracle(sc.p, &opex);
    if (st == GRN_OK) std::printf("%.17g\n", opex);
    return report(st, "oracle");
  }
  return kExitUsage;
}
