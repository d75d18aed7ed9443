#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "greenran/csv.hpp"
#include "greenran/error.hpp"
#include "greenran/traffic.hpp"

using namespace greenran;
using namespace greenran::testing;

TEST(Battery, ChargesBelowCapacity) {
  const auto next = battery_step({50.0, 100.0, 0.0}, 10.0, 100.0, 0.3);
  EXPECT_NEAR(next.stored_kwh, 70.0, 1e-12);
  EXPECT_EQ(next.unstored_total_kwh, 0.0);
}

TEST(Battery, ClipsAtCapacityAndCountsOverflow) {
  const auto next = battery_step({90.0, 100.0, 0.0}, 0.0, 100.0, 0.3);
  EXPECT_EQ(next.stored_kwh, 100.0);
  EXPECT_NEAR(next.unstored_total_kwh, 20.0, 1e-12);
}

TEST(Battery, EmptyFixedPoint) {
  const auto next = battery_step({0.0, 100.0, 0.0}, 0.0, 100.0, 0.0);
  EXPECT_EQ(next.stored_kwh, 0.0);
  EXPECT_EQ(next.unstored_total_kwh, 0.0);
}

TEST(Battery, RejectsOverdraw) {
  EXPECT_THROW(battery_step({5.0, 100.0, 0.0}, 8.0, 10.0, 0.2), std::invalid_argument);
}

TEST(FeasibleDispatch, AvailabilityLimited) {
  EXPECT_EQ(feasible_dispatch_max({5.0, 100.0, 0.0}, 10.0, 0.2, 10.0), 7.0);
}

TEST(FeasibleDispatch, ConsumptionLimited) {
  EXPECT_EQ(feasible_dispatch_max({100.0, 100.0, 0.0}, 10.0, 0.0, 10.0), 10.0);
}

TEST(FeasibleDispatch, NothingToPower) { EXPECT_EQ(feasible_dispatch_max({80.0, 100.0, 0.0}, 10.0, 0.5, 0.0), 0.0); }

TEST(WindowedReward, HandExample) {
  const std::vector<double> history{1.0, 2.0, 3.0};
  EXPECT_NEAR(windowed_reward(history, 2, 0.1), -0.6, 1e-12);
}

TEST(WindowedReward, OnlyLastWindowCounts) {
  const std::vector<double> history{100.0, 1.0, 2.0, 3.0};
  EXPECT_NEAR(windowed_reward(history, 2, 0.1), -0.6, 1e-12);
}

TEST(WindowedReward, PartialWindowAtStart) {
  const std::vector<double> history{4.0};
  EXPECT_NEAR(windowed_reward(history, 48, 0.5), -2.0, 1e-12);
}

TEST(WindowedReward, FreeEnergyGivesZero) {
  const std::vector<double> history{0.0, 0.0, 0.0};
  EXPECT_EQ(windowed_reward(history, 2, 0.1), 0.0);
}

TEST(WindowedReward, ZeroScaleGivesZero) {
  const std::vector<double> history{5.0, 9.0};
  EXPECT_EQ(windowed_reward(history, 1, 0.0), 0.0);
}

namespace {

TinySpec loaded_spec() {
  TinySpec spec;
  spec.du_count = 2;
  spec.functions = 4;
  spec.horizon = 30;
  spec.loads = {{std::vector<double>(30, 0.3), std::vector<double>(30, 2.0)},
                {std::vector<double>(30, 0.1), std::vector<double>(30, 4.0)}};
  spec.solar = std::vector<double>(30, 0.0);
  return spec;
}

std::vector<NodeAction> uniform_actions(const Environment& env, std::size_t split, std::size_t level) {
  std::vector<NodeAction> a(env.node_count());
  for (std::size_t r = 0; r < env.config().du_count; ++r) a[r] = {{split}, level};
  a.back() = {{}, level};
  return a;
}

}  // namespace

TEST(Environment, NoDispatchPaysForEverything) {
  auto env = tiny_env(loaded_spec());
  const auto& rec = env.step(uniform_actions(env, 2, 0));
  double total = 0.0;
  for (double e : rec.energy_kwh) total += e;
  EXPECT_NEAR(rec.opex, total * 0.03, 1e-12);
  for (double p : rec.dispatch_kwh) EXPECT_EQ(p, 0.0);
}

TEST(Environment, FullDispatchWithAmpleStorageIsFree) {
  auto spec = loaded_spec();
  spec.initial_battery_fraction = 1.0;
  auto env = tiny_env(spec);
  const auto& rec = env.step(uniform_actions(env, 1, 2));
  EXPECT_EQ(rec.opex, 0.0);
}

TEST(Environment, DistributedSplitLeavesCuStatic) {
  auto env = tiny_env(loaded_spec());
  for (int t = 0; t < 5; ++t) {
    const auto& rec = env.step(uniform_actions(env, 4, 1));
    EXPECT_EQ(rec.energy_kwh[env.cu_index()], 10.0);
  }
}

TEST(Environment, ObservationTimeOfDayWraps) {
  auto env = tiny_env(loaded_spec());
  for (int t = 0; t < 25; ++t) env.step(uniform_actions(env, 0, 0));
  EXPECT_EQ(env.time(), 25u);
  EXPECT_EQ(env.observe(0).time_of_day, 1u);
}

TEST(Environment, FreshResetHasEmptyBatteries) {
  auto env = tiny_env(loaded_spec());
  env.step(uniform_actions(env, 0, 0));
  env.reset();
  EXPECT_EQ(env.time(), 0u);
  for (std::size_t n = 0; n < env.node_count(); ++n) EXPECT_EQ(env.observe(n).battery_kwh, 0.0);
}

TEST(Environment, CuSeesSumOfDuLoads) {
  EnvConfig cfg;
  cfg.horizon = 48;
  TrafficProfileConfig traffic;
  traffic.seed = 12;
  const auto loads = generate_load_matrix(traffic, 48, cfg.du_count, cfg.types);
  Environment env(cfg, EnvData::with_shared_solar(loads, SolarTrace{"flat", {0.1}}));
  for (int t = 0; t < 30; ++t) {
    const auto cu = env.observe(env.cu_index()).loads;
    for (std::size_t k = 0; k < cfg.types.size(); ++k) {
      double sum = 0.0;
      for (std::size_t r = 0; r < cfg.du_count; ++r) sum += loads.at(r, k, t);
      EXPECT_NEAR(cu[k], sum, 1e-9);
    }
    std::vector<NodeAction> a(env.node_count());
    for (std::size_t r = 0; r < cfg.du_count; ++r) a[r] = {{2}, 1};
    env.step(a);
  }
}

TEST(Environment, StepAfterHorizonIsStateError) {
  auto spec = loaded_spec();
  spec.horizon = 2;
  for (auto& du : spec.loads) {
    for (auto& v : du) v.resize(2);
  }
  auto env = tiny_env(spec);
  env.step(uniform_actions(env, 0, 0));
  env.step(uniform_actions(env, 0, 0));
  EXPECT_TRUE(env.done());
  EXPECT_THROW(env.step(uniform_actions(env, 0, 0)), StateError);
}

TEST(Environment, RejectsMalformedActions) {
  auto env = tiny_env(loaded_spec());
  auto a = uniform_actions(env, 0, 0);
  a.pop_back();
  EXPECT_THROW(env.step(a), std::invalid_argument);
  a = uniform_actions(env, 0, 3);
  EXPECT_THROW(env.step(a), std::invalid_argument);
  a = uniform_actions(env, 5, 0);
  EXPECT_THROW(env.step(a), std::invalid_argument);
  a = uniform_actions(env, 0, 0);
  a.back().splits = {1};
  EXPECT_THROW(env.step(a), std::invalid_argument);
  EXPECT_THROW(env.observe(7), std::out_of_range);
  EXPECT_EQ(env.time(), 0u);
}

TEST(Environment, RejectsMismatchedData) {
  auto spec = loaded_spec();
  auto cfg = tiny_config(spec);
  cfg.du_count = 3;
  EXPECT_THROW(Environment(cfg, tiny_data(spec)), DataError);
}

TEST(Environment, ConfigValidationNamesField) {
  EnvConfig cfg;
  cfg.du_count = 0;
  try {
    cfg.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("env.du_count"), std::string::npos);
  }
  cfg = {};
  cfg.du.battery_kwh = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Environment, RewardFollowsWindowOfStepCosts) {
  auto spec = random_spec(4, 2, 3, 40, 5.0, 0.3);
  auto cfg = tiny_config(spec);
  cfg.reward_window = 3;
  cfg.reward_scale = 0.25;
  Environment env(cfg, tiny_data(spec));
  std::mt19937_64 rng(1);
  std::vector<double> costs;
  while (!env.done()) {
    costs.push_back(env.step(random_joint_action(cfg, rng)).opex);
    EXPECT_NEAR(env.reward(), windowed_reward(costs, 3, 0.25), 1e-12);
  }
}

TEST(Environment, SummedLogMatchesTotals) {
  auto spec = random_spec(8, 2, 3, 60, 5.0, 0.3);
  auto env = tiny_env(spec);
  env.set_logging(true);
  std::mt19937_64 rng(2);
  while (!env.done()) env.step(random_joint_action(env.config(), rng));
  std::ostringstream out;
  write_episode_log(out, env.log(), env.config().du_count);
  std::istringstream in(out.str());
  csv::Reader reader(in, "log");
  reader.expect_header({"t", "node", "E_kwh", "p_kwh", "unstored_kwh", "price", "opex"});
  double sum = 0.0;
  std::size_t rows = 0;
  while (auto row = reader.next()) {
    sum += reader.to_double((*row)[6]);
    ++rows;
  }
  EXPECT_EQ(rows, 60u * env.node_count());
  EXPECT_NEAR(sum, env.total_opex(), 1e-9);
}
