#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "greenran/error.hpp"
#include "greenran/scenario.hpp"

using namespace greenran;

namespace {

std::string config_error(const std::string& json) {
  try {
    parse_scenario(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Scenario, DefaultsAreTheReferenceSetup) {
  const ScenarioConfig cfg = parse_scenario("{}");
  EXPECT_EQ(cfg.env.du_count, 20u);
  EXPECT_EQ(cfg.env.functions, 4u);
  EXPECT_EQ(cfg.env.horizon, 8760u);
  EXPECT_EQ(cfg.env.reward_window, 48u);
  EXPECT_EQ(cfg.learning.alpha, 0.05);
  EXPECT_EQ(cfg.learning.gamma, 0.90);
  EXPECT_EQ(cfg.learning.epsilon_start, 0.5);
  EXPECT_EQ(cfg.learning.epsilon_decay, 5e-5);
  EXPECT_EQ(cfg.learning.episodes, 4000u);
  EXPECT_EQ(cfg.env.cu.static_kwh, 10.0);
  EXPECT_EQ(cfg.env.du.battery_kwh, 100.0);
}

TEST(Scenario, ReadsNestedFields) {
  const auto cfg = parse_scenario(R"({
    "env": {"du_count": 3, "functions": 2, "horizon": 48, "du": {"panel_size": 50},
            "du_overrides": {"1": {"battery_kwh": 7}}, "tariff": {"night": 0.01, "day": 0.02, "peak": 0.05}},
    "traffic": {"intensity": 1.5, "noise_sigma": 0},
    "solar": {"synthetic": {"peak_kwh": 0.2, "cloud_sigma": 0.3}},
    "policy": {"kind": "sarsa", "learning": {"episodes": 10, "epsilon_schedule": "per_episode"}},
    "run": {"seeds": [4, 5], "output_dir": "runs"},
    "sweep": {"policies": ["dran", "oracle"]}
  })");
  EXPECT_EQ(cfg.env.du_count, 3u);
  EXPECT_EQ(cfg.env.du.panel_size, 50.0);
  EXPECT_EQ(cfg.env.du_config(1).battery_kwh, 7.0);
  EXPECT_EQ(cfg.env.du_config(1).panel_size, 50.0);
  EXPECT_EQ(cfg.traffic.intensity, 1.5);
  EXPECT_EQ(cfg.solar.synthetic.cloud_sigma, 0.3);
  EXPECT_EQ(cfg.policy, PolicyKind::RldfsSarsa);
  EXPECT_EQ(cfg.learning.schedule, EpsilonSchedule::PerEpisode);
  EXPECT_EQ(cfg.run.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_EQ(cfg.run.output_dir, "runs");
  EXPECT_EQ(cfg.sweep_policies.size(), 2u);
  EXPECT_EQ(traffic_rate_label(cfg.traffic.intensity), "high");
}

TEST(Scenario, ErrorsNameTheField) {
  EXPECT_NE(config_error(R"({"env": {"du_count": 0}})").find("env.du_count"), std::string::npos);
  EXPECT_NE(config_error(R"({"env": {"du_count": -2}})").find("env.du_count"), std::string::npos);
  EXPECT_NE(config_error(R"({"env": {"horizon": "long"}})").find("env.horizon"), std::string::npos);
  EXPECT_NE(config_error(R"({"env": {"cu": {"battery_kwh": -1}}})").find("env.cu"), std::string::npos);
  EXPECT_NE(config_error(R"({"policy": {"learning": {"alpha": 2}}})").find("policy.learning.alpha"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"policy": {"kind": "magic"}})").find("policy.kind"), std::string::npos);
  EXPECT_NE(config_error(R"({"run": {"seeds": []}})").find("run.seeds"), std::string::npos);
  EXPECT_NE(config_error(R"({"oracle": {"mode": "fast"}})").find("oracle.mode"), std::string::npos);
  EXPECT_NE(config_error("{not json").find("JSON"), std::string::npos);
}

TEST(Scenario, UnknownKeysAreRejected) {
  EXPECT_NE(config_error(R"({"env": {"du_cout": 3}})").find("env.du_cout"), std::string::npos);
  EXPECT_NE(config_error(R"({"extra": 1})").find("extra"), std::string::npos);
}

TEST(Scenario, JsonRoundTrip) {
  auto cfg = greenran::testing::miniature_scenario();
  cfg.env.reward_scale = 0.25;
  cfg.env.du_overrides[0] = cfg.env.du;
  cfg.env.du_overrides[0].panel_size = 33.0;
  cfg.run.seeds = {1, 2, 3};
  const std::string text = scenario_to_json(cfg);
  const auto back = parse_scenario(text);
  EXPECT_EQ(scenario_to_json(back), text);
  EXPECT_EQ(back.env.du_config(0).panel_size, 33.0);
  EXPECT_EQ(*back.env.reward_scale, 0.25);
}

TEST(Scenario, LoadResolvesAgainstFileDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "greenran_scenario_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "s.json") << R"({"env": {"du_count": 2}})";
  }
  const auto cfg = load_scenario(dir / "s.json");
  EXPECT_EQ(cfg.env.du_count, 2u);
  EXPECT_EQ(cfg.base_dir, dir);
  EXPECT_THROW(load_scenario(dir / "missing.json"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Scenario, SameSeedSameData) {
  auto cfg = greenran::testing::miniature_scenario();
  cfg.traffic.noise_sigma = 0.2;
  cfg.solar.synthetic.cloud_sigma = 0.3;
  const auto a = build_env_data(cfg, 9);
  const auto b = build_env_data(cfg, 9);
  const auto c = build_env_data(cfg, 10);
  EXPECT_EQ(a.loads.at(0, 1, 5), b.loads.at(0, 1, 5));
  EXPECT_EQ(a.solar[0]->values, b.solar[0]->values);
  EXPECT_NE(a.solar[0]->values, c.solar[0]->values);
}
