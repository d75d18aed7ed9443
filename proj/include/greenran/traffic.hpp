#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "greenran/types.hpp"

namespace greenran {

struct TrafficProfileConfig {
  double nu = 7.0;
  double phase_min = 3.0 * std::numbers::pi / 4.0;
  double phase_max = 7.0 * std::numbers::pi / 4.0;
  /// Explicit per-DU phases; drawn uniformly from [phase_min, phase_max] when empty.
  std::vector<double> phases;
  double noise_sigma = 0.02;
  double seasonal_amplitude = 0.3;
  /// Global load multiplier: 0.5 low, 1.0 medium, 1.5 high.
  double intensity = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// (1/2^nu) [1 + sin(pi t / 12 + phase)]^nu, in [0, 1].
double deterministic_load(double t, double phase, double nu);

/// Multiplicative yearly envelope: 1 - A (1 + cos(2 pi d / 365)) / 2 over day of year d.
double seasonal_factor(std::size_t t, double amplitude);

/// Per-DU phases used by generate_load_matrix for this config.
std::vector<double> draw_phases(const TrafficProfileConfig& cfg, std::size_t du_count);

LoadMatrix generate_load_matrix(const TrafficProfileConfig& cfg, std::size_t horizon,
                                std::size_t du_count, const std::vector<TrafficType>& types);

/// CSV with header `du,type,t,load`.
void write_load_csv(std::ostream& out, const LoadMatrix& loads, const std::vector<TrafficType>& types);
LoadMatrix read_load_csv(std::istream& in, const std::vector<TrafficType>& types);

}  // namespace greenran
