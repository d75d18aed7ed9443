#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace greenran {

/// Ordered chain of user-related functions, bottom-up as deployed at a DU.
struct FunctionChain {
  std::size_t count = 4;

  explicit FunctionChain(std::size_t n = 4);
};

enum class TrafficKind : std::uint8_t { URLLC, eMBB };

std::string_view to_string(TrafficKind kind);
TrafficKind traffic_kind_from_string(std::string_view name);

struct TrafficType {
  TrafficKind id = TrafficKind::eMBB;
  bool pinned_to_du = false;
  double load_scale = 1.0;
};

/// URLLC pinned to the DU with unit scale, eMBB splittable with ten times the load.
std::vector<TrafficType> default_traffic_types();

/// Split points for one DU, one entry per traffic type. Functions with index
/// below the split point run at the DU, the rest at the CU.
class SplitVector {
 public:
  SplitVector() = default;
  explicit SplitVector(std::vector<std::size_t> points) : points_(std::move(points)) {}

  std::size_t size() const { return points_.size(); }
  std::size_t operator[](std::size_t type) const { return points_.at(type); }
  const std::vector<std::size_t>& points() const { return points_; }

  /// Throws std::invalid_argument if any split point exceeds the chain length.
  void validate(const FunctionChain& chain) const;

  /// Per-function placement a_f for one traffic type: 1 = DU, 0 = CU.
  std::vector<std::uint8_t> expand(std::size_t type, const FunctionChain& chain) const;

  friend bool operator==(const SplitVector&, const SplitVector&) = default;

 private:
  std::vector<std::size_t> points_;
};

struct NodeEnergyConfig {
  double static_kwh = 0.0;    // E_S, per timestep
  double dynamic_kwh = 0.0;   // E_D, per load-unit x function x timestep
  double panel_size = 0.0;    // omega, panel units
  double battery_kwh = 0.0;   // beta

  void validate(std::string_view where) const;

  static NodeEnergyConfig cu_defaults() { return {10.0, 0.9, 500.0, 500.0}; }
  static NodeEnergyConfig du_defaults() { return {5.0, 1.0, 100.0, 100.0}; }
};

/// Time-of-use electricity price in $/kWh, indexed by hour of day.
class TariffSchedule {
 public:
  TariffSchedule();  // three-band default
  explicit TariffSchedule(const std::vector<double>& prices);

  double price_at_hour(std::size_t hour) const { return prices_[hour % 24]; }
  double max_price() const;
  const std::array<double, 24>& prices() const { return prices_; }

  /// Night 22-06 at `night`, day 06-17 at `day`, peak 17-22 at `peak`.
  static TariffSchedule three_band(double night, double day, double peak);
  static TariffSchedule flat(double price);

 private:
  std::array<double, 24> prices_{};
};

/// Traffic load U[r][i][t], row-major with t fastest.
class LoadMatrix {
 public:
  LoadMatrix() = default;
  LoadMatrix(std::size_t du_count, std::size_t type_count, std::size_t horizon);

  std::size_t du_count() const { return du_count_; }
  std::size_t type_count() const { return type_count_; }
  std::size_t horizon() const { return horizon_; }

  double at(std::size_t du, std::size_t type, std::size_t t) const {
    return values_[index(du, type, t)];
  }
  void set(std::size_t du, std::size_t type, std::size_t t, double value);

  /// Loads of every type at one DU and timestep.
  std::vector<double> loads_at(std::size_t du, std::size_t t) const;
  double max_load(std::size_t du, std::size_t type) const;

  friend bool operator==(const LoadMatrix&, const LoadMatrix&) = default;

 private:
  std::size_t index(std::size_t du, std::size_t type, std::size_t t) const {
    return (du * type_count_ + type) * horizon_ + t;
  }

  std::size_t du_count_ = 0;
  std::size_t type_count_ = 0;
  std::size_t horizon_ = 0;
  std::vector<double> values_;
};

}  // namespace greenran
