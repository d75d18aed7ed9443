#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "greenran/solar.hpp"

using namespace greenran;
namespace fs = std::filesystem;

namespace {

class TraceFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("greenran_solar_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  static std::string rows(std::size_t n, double value = 0.25) {
    std::string s = "hour,kwh_per_unit\n";
    for (std::size_t h = 0; h < n; ++h) s += std::to_string(h) + "," + std::to_string(value) + "\n";
    return s;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(TraceFiles, ExactLength) {
  const auto trace = load_trace(write("a.csv", rows(24)), 24);
  ASSERT_EQ(trace.values.size(), 24u);
  EXPECT_EQ(trace.values[7], 0.25);
}

TEST_F(TraceFiles, NegativeValueNamesRow) {
  std::string body = rows(5);
  body += "5,-0.1\n";
  try {
    load_trace(write("neg.csv", body), 6);
    FAIL() << "expected TraceError";
  } catch (const TraceError& e) {
    EXPECT_EQ(e.kind(), TraceError::Kind::NegativeValue);
    EXPECT_EQ(e.row(), 6u);
  }
}

TEST_F(TraceFiles, TooShort) {
  try {
    load_trace(write("short.csv", rows(23)), 24);
    FAIL() << "expected TraceError";
  } catch (const TraceError& e) {
    EXPECT_EQ(e.kind(), TraceError::Kind::TooShort);
  }
}

TEST_F(TraceFiles, MissingFile) {
  try {
    load_trace(dir_ / "nope.csv", 24);
    FAIL() << "expected TraceError";
  } catch (const TraceError& e) {
    EXPECT_EQ(e.kind(), TraceError::Kind::MissingFile);
  }
}

TEST_F(TraceFiles, MalformedRow) {
  try {
    load_trace(write("bad.csv", "hour,kwh_per_unit\n0,0.1\n1,sunny\n"), 2);
    FAIL() << "expected TraceError";
  } catch (const TraceError& e) {
    EXPECT_EQ(e.kind(), TraceError::Kind::MalformedRow);
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST_F(TraceFiles, LongerFileTruncatedWithWarning) {
  std::vector<std::string> warnings;
  const auto trace = load_trace(write("long.csv", rows(30)), 24, &warnings);
  EXPECT_EQ(trace.values.size(), 24u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST_F(TraceFiles, WriteThenLoad) {
  const auto trace = synthetic_trace({0.4, 6.0, 18.0, 0.5}, 48, 11);
  write_trace(trace, dir_ / "rt.csv");
  EXPECT_EQ(load_trace(dir_ / "rt.csv", 48).values, trace.values);
}

TEST(SyntheticSolar, ApexIsPeak) {
  const auto trace = synthetic_trace({0.3, 6.0, 18.0, 0.0}, 48, 1);
  EXPECT_EQ(trace.values[12], 0.3);
  EXPECT_EQ(trace.values[36], 0.3);
}

TEST(SyntheticSolar, DarkOutsideDaylight) {
  const auto trace = synthetic_trace({0.3, 6.0, 18.0, 0.4}, 24 * 10, 2);
  for (std::size_t t = 0; t < trace.values.size(); ++t) {
    const std::size_t h = t % 24;
    if (h < 6 || h >= 18) EXPECT_EQ(trace.values[t], 0.0) << t;
  }
}

TEST(SyntheticSolar, Deterministic) {
  const SyntheticSolarParams p{0.3, 6.0, 18.0, 0.5};
  EXPECT_EQ(synthetic_trace(p, 1000, 8).values, synthetic_trace(p, 1000, 8).values);
  EXPECT_NE(synthetic_trace(p, 1000, 8).values, synthetic_trace(p, 1000, 9).values);
}

TEST(SyntheticSolar, CloudFactorHasUnitMean) {
  const auto clear = synthetic_trace({0.3, 6.0, 18.0, 0.0}, 24 * 4000, 3);
  const auto cloudy = synthetic_trace({0.3, 6.0, 18.0, 0.3}, 24 * 4000, 3);
  double a = 0.0, b = 0.0;
  for (std::size_t t = 0; t < clear.values.size(); ++t) {
    a += clear.values[t];
    b += cloudy.values[t];
  }
  EXPECT_NEAR(b / a, 1.0, 0.02);
}
