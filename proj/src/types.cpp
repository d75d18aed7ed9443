#include "greenran/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "greenran/error.hpp"

namespace greenran {

FunctionChain::FunctionChain(std::size_t n) : count(n) {
  if (n == 0) throw std::invalid_argument("function chain must hold at least one function");
}

std::string_view to_string(TrafficKind kind) {
  switch (kind) {
    case TrafficKind::URLLC: return "URLLC";
    case TrafficKind::eMBB: return "eMBB";
  }
  return "?";
}

TrafficKind traffic_kind_from_string(std::string_view name) {
  if (name == "URLLC" || name == "urllc") return TrafficKind::URLLC;
  if (name == "eMBB" || name == "embb") return TrafficKind::eMBB;
  throw std::invalid_argument("unknown traffic type '" + std::string(name) + "'");
}

std::vector<TrafficType> default_traffic_types() {
  return {{TrafficKind::URLLC, true, 1.0}, {TrafficKind::eMBB, false, 10.0}};
}

void SplitVector::validate(const FunctionChain& chain) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] > chain.count) {
      throw std::invalid_argument("split point " + std::to_string(points_[i]) + " for type " +
                                  std::to_string(i) + " exceeds chain length " +
                                  std::to_string(chain.count));
    }
  }
}

std::vector<std::uint8_t> SplitVector::expand(std::size_t type, const FunctionChain& chain) const {
  const std::size_t k = points_.at(type);
  if (k > chain.count) throw std::invalid_argument("split point exceeds chain length");
  std::vector<std::uint8_t> a(chain.count, 0);
  std::fill_n(a.begin(), k, std::uint8_t{1});
  return a;
}

void NodeEnergyConfig::validate(std::string_view where) const {
  auto check = [&](double v, const char* field) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError(std::string(where) + "." + field + ": must be a finite value >= 0");
    }
  };
  check(static_kwh, "static_kwh");
  check(dynamic_kwh, "dynamic_kwh");
  check(panel_size, "panel_size");
  check(battery_kwh, "battery_kwh");
}

TariffSchedule::TariffSchedule() : TariffSchedule(three_band(0.03, 0.07, 0.11)) {}

TariffSchedule::TariffSchedule(const std::vector<double>& prices) {
  if (prices.size() != 24) {
    throw std::invalid_argument("tariff needs exactly 24 hourly prices, got " +
                                std::to_string(prices.size()));
  }
  for (std::size_t h = 0; h < 24; ++h) {
    if (!std::isfinite(prices[h]) || prices[h] < 0.0) {
      throw std::invalid_argument("tariff price at hour " + std::to_string(h) + " is negative");
    }
    prices_[h] = prices[h];
  }
}

double TariffSchedule::max_price() const { return *std::max_element(prices_.begin(), prices_.end()); }

TariffSchedule TariffSchedule::three_band(double night, double day, double peak) {
  std::vector<double> p(24);
  for (std::size_t h = 0; h < 24; ++h) {
    if (h >= 6 && h < 17) {
      p[h] = day;
    } else if (h >= 17 && h < 22) {
      p[h] = peak;
    } else {
      p[h] = night;
    }
  }
  return TariffSchedule(p);
}

TariffSchedule TariffSchedule::flat(double price) { return TariffSchedule(std::vector<double>(24, price)); }

LoadMatrix::LoadMatrix(std::size_t du_count, std::size_t type_count, std::size_t horizon)
    : du_count_(du_count),
      type_count_(type_count),
      horizon_(horizon),
      values_(du_count * type_count * horizon, 0.0) {}

void LoadMatrix::set(std::size_t du, std::size_t type, std::size_t t, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("traffic load must be finite and >= 0");
  }
  if (du >= du_count_ || type >= type_count_ || t >= horizon_) {
    throw std::out_of_range("load matrix index out of range");
  }
  values_[index(du, type, t)] = value;
}

std::vector<double> LoadMatrix::loads_at(std::size_t du, std::size_t t) const {
  std::vector<double> out(type_count_);
  for (std::size_t i = 0; i < type_count_; ++i) out[i] = at(du, i, t);
  return out;
}

double LoadMatrix::max_load(std::size_t du, std::size_t type) const {
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(index(du, type, 0));
  if (horizon_ == 0) return 0.0;
  return *std::max_element(first, first + static_cast<std::ptrdiff_t>(horizon_));
}

}  // namespace greenran
