#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "greenran/greenran.h"

namespace fs = std::filesystem;

namespace {

const char* kTiny = R"({
  "env": {"du_count": 2, "functions": 2, "horizon": 48},
  "traffic": {"noise_sigma": 0},
  "policy": {"kind": "ql", "learning": {"episodes": 5}},
  "run": {"seeds": [1, 2]}
})";

struct Scenario {
  grn_scenario* s = nullptr;
  Scenario() { EXPECT_EQ(grn_scenario_parse(kTiny, nullptr, &s), GRN_OK) << grn_last_error(); }
  ~Scenario() { grn_scenario_free(s); }
};

fs::path temp_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("greenran_capi_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(CApi, StatusCodesAndLastError) {
  grn_scenario* s = nullptr;
  EXPECT_EQ(grn_scenario_parse("{\"env\": {\"du_count\": 0}}", nullptr, &s), GRN_ERR_CONFIG);
  EXPECT_NE(std::strstr(grn_last_error(), "env.du_count"), nullptr);
  EXPECT_EQ(s, nullptr);
  EXPECT_EQ(grn_scenario_parse(nullptr, nullptr, &s), GRN_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(grn_scenario_load("/nonexistent/x.json", &s), GRN_ERR_CONFIG);
  Scenario sc;
  EXPECT_EQ(grn_scenario_set_policy(sc.s, "nope"), GRN_ERR_CONFIG);
  EXPECT_EQ(grn_scenario_set_solar_trace(sc.s, "/nonexistent/trace.csv"), GRN_OK);
  grn_env* e = nullptr;
  EXPECT_EQ(grn_env_create(sc.s, 1, &e), GRN_ERR_DATA);
  EXPECT_STRNE(grn_version(), "");
}

TEST(CApi, JsonBufferProtocol) {
  Scenario sc;
  size_t needed = 0;
  ASSERT_EQ(grn_scenario_to_json(sc.s, nullptr, 0, &needed), GRN_OK);
  ASSERT_GT(needed, 1u);
  std::vector<char> buf(needed);
  ASSERT_EQ(grn_scenario_to_json(sc.s, buf.data(), buf.size(), nullptr), GRN_OK);
  EXPECT_EQ(std::strlen(buf.data()), needed - 1);
  grn_scenario* copy = nullptr;
  ASSERT_EQ(grn_scenario_parse(buf.data(), nullptr, &copy), GRN_OK);
  std::vector<char> again(needed);
  ASSERT_EQ(grn_scenario_to_json(copy, again.data(), again.size(), nullptr), GRN_OK);
  EXPECT_STREQ(buf.data(), again.data());
  grn_scenario_free(copy);
}

TEST(CApi, SteppingAnEnvironment) {
  Scenario sc;
  grn_env* e = nullptr;
  ASSERT_EQ(grn_env_create(sc.s, 3, &e), GRN_OK);
  EXPECT_EQ(grn_env_node_count(e), 3u);
  EXPECT_EQ(grn_env_split_width(e), 1u);
  const uint8_t splits[2] = {0, 2};
  const size_t levels[3] = {1, 2, 0};
  double opex = -1.0, total = 0.0;
  ASSERT_EQ(grn_env_step(e, splits, 2, levels, 3, &opex), GRN_OK) << grn_last_error();
  EXPECT_GE(opex, 0.0);
  total += opex;
  EXPECT_EQ(grn_env_step(e, splits, 1, levels, 3, &opex), GRN_ERR_INVALID_ARGUMENT);
  const size_t bad_levels[3] = {0, 0, 7};
  EXPECT_EQ(grn_env_step(e, splits, 2, bad_levels, 3, &opex), GRN_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(grn_env_time(e), 1u);

  grn_observation obs{};
  double loads[2];
  ASSERT_EQ(grn_env_observe(e, 2, &obs, loads, 2), GRN_OK);
  EXPECT_EQ(obs.time_of_day, 1u);
  EXPECT_EQ(obs.load_count, 2u);
  EXPECT_EQ(grn_env_observe(e, 2, &obs, loads, 1), GRN_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(grn_env_observe(e, 9, &obs, loads, 2), GRN_ERR_INVALID_ARGUMENT);

  while (!grn_env_done(e)) {
    ASSERT_EQ(grn_env_step_policy(e, "cran", &opex), GRN_OK);
    total += opex;
  }
  double reported = 0.0;
  ASSERT_EQ(grn_env_total_opex(e, &reported), GRN_OK);
  EXPECT_NEAR(reported, total, 1e-9);
  double reward = 0.0;
  EXPECT_EQ(grn_env_reward(e, &reward), GRN_OK);
  EXPECT_LE(reward, 0.0);
  EXPECT_EQ(grn_env_step_policy(e, "dran", &opex), GRN_ERR_STATE);
  EXPECT_EQ(grn_env_step_policy(e, "ql", &opex), GRN_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(grn_env_reset(e), GRN_OK);
  EXPECT_EQ(grn_env_time(e), 0u);
  grn_env_free(e);
}

TEST(CApi, TrainEvaluateSweepOracle) {
  Scenario sc;
  const auto train_dir = temp_dir("train");
  ASSERT_EQ(grn_scenario_set_output_dir(sc.s, train_dir.c_str()), GRN_OK);
  ASSERT_EQ(grn_train(sc.s), GRN_OK) << grn_last_error();
  for (const char* seed : {"seed_1", "seed_2"}) {
    for (const char* f : {"qtable_du0.csv", "qtable_du1.csv", "qtable_cu.csv", "learning_curve.csv"}) {
      EXPECT_TRUE(fs::exists(train_dir / seed / f)) << seed << "/" << f;
    }
  }

  const auto eval_dir = temp_dir("eval");
  ASSERT_EQ(grn_scenario_set_output_dir(sc.s, eval_dir.c_str()), GRN_OK);
  EXPECT_EQ(grn_evaluate(sc.s, nullptr), GRN_ERR_CONFIG);
  ASSERT_EQ(grn_evaluate(sc.s, train_dir.c_str()), GRN_OK) << grn_last_error();
  EXPECT_TRUE(fs::exists(eval_dir / "summary.csv"));
  EXPECT_EQ(grn_evaluate(sc.s, eval_dir.c_str()), GRN_ERR_DATA);

  const double values[2] = {50.0, 100.0};
  ASSERT_EQ(grn_scenario_set_policy(sc.s, "dran"), GRN_OK);
  EXPECT_EQ(grn_sweep(sc.s, "weather", values, 2), GRN_ERR_CONFIG);

  ASSERT_EQ(grn_scenario_set_output_dir(sc.s, eval_dir.c_str()), GRN_OK);
  const char* json = R"({"env": {"du_count": 2, "functions": 2, "horizon": 48}, "sweep": {"policies": ["dran", "cran"]}})";
  grn_scenario* sw = nullptr;
  ASSERT_EQ(grn_scenario_parse(json, nullptr, &sw), GRN_OK);
  ASSERT_EQ(grn_scenario_set_output_dir(sw, eval_dir.c_str()), GRN_OK);
  ASSERT_EQ(grn_sweep(sw, "panel", values, 2), GRN_OK) << grn_last_error();
  const std::string sweep = slurp(eval_dir / "sweep_panel.csv");
  EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 5);
  grn_scenario_free(sw);
  fs::remove_all(train_dir);
  fs::remove_all(eval_dir);
}

TEST(CApi, OracleOnSmallScenario) {
  grn_scenario* s = nullptr;
  ASSERT_EQ(grn_scenario_parse(R"({"env": {"du_count": 1, "functions": 2, "horizon": 6}, "run": {"seeds": [3]}})",
                               nullptr, &s),
            GRN_OK);
  const auto dir = temp_dir("oracle");
  ASSERT_EQ(grn_scenario_set_output_dir(s, dir.c_str()), GRN_OK);
  double opt = -1.0;
  ASSERT_EQ(grn_oracle(s, &opt), GRN_OK) << grn_last_error();
  EXPECT_GE(opt, 0.0);
  const std::string summary = slurp(dir / "seed_3" / "oracle_summary.csv");
  EXPECT_EQ(summary.rfind("mode,total_opex,peak_frontier\nlevels,", 0), 0u);
  grn_scenario_free(s);
  fs::remove_all(dir);
}
