#include "greenran/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "greenran/csv.hpp"
#include "greenran/error.hpp"
#include "greenran/rng.hpp"

namespace greenran {

void TrafficProfileConfig::validate() const {
  if (!(nu > 0.0)) throw ConfigError("traffic.nu: must be > 0");
  if (!(phase_min <= phase_max)) throw ConfigError("traffic.phase_min: must not exceed phase_max");
  if (!(noise_sigma >= 0.0)) throw ConfigError("traffic.noise_sigma: must be >= 0");
  if (!(seasonal_amplitude >= 0.0 && seasonal_amplitude < 1.0)) {
    throw ConfigError("traffic.seasonal_amplitude: must lie in [0, 1)");
  }
  if (!(intensity >= 0.0)) throw ConfigError("traffic.intensity: must be >= 0");
  for (double p : phases) {
    if (!std::isfinite(p)) throw ConfigError("traffic.phases: must be finite");
  }
}

double deterministic_load(double t, double phase, double nu) {
  const double base = std::max(0.0, (1.0 + std::sin(std::numbers::pi * t / 12.0 + phase)) / 2.0);
  return std::pow(base, nu);
}

double seasonal_factor(std::size_t t, double amplitude) {
  const auto day = static_cast<double>((t / 24) % 365);
  return 1.0 - amplitude * (1.0 + std::cos(2.0 * std::numbers::pi * day / 365.0)) / 2.0;
}

std::vector<double> draw_phases(const TrafficProfileConfig& cfg, std::size_t du_count) {
  if (!cfg.phases.empty()) {
    if (cfg.phases.size() != du_count) {
      throw ConfigError("traffic.phases: expected " + std::to_string(du_count) + " entries, got " +
                        std::to_string(cfg.phases.size()));
    }
    return cfg.phases;
  }
  auto rng = make_stream(cfg.seed, "traffic-phase");
  std::uniform_real_distribution<double> dist(cfg.phase_min, cfg.phase_max);
  std::vector<double> out(du_count);
  for (auto& p : out) p = dist(rng);
  return out;
}

LoadMatrix generate_load_matrix(const TrafficProfileConfig& cfg, std::size_t horizon,
                                std::size_t du_count, const std::vector<TrafficType>& types) {
  cfg.validate();
  if (horizon == 0) throw std::invalid_argument("generate_load_matrix: horizon must be >= 1");
  if (du_count == 0) throw std::invalid_argument("generate_load_matrix: du_count must be >= 1");

  const auto phases = draw_phases(cfg, du_count);
  auto noise_rng = make_stream(cfg.seed, "traffic-noise");
  std::normal_distribution<double> noise(0.0, 1.0);

  LoadMatrix m(du_count, types.size(), horizon);
  for (std::size_t r = 0; r < du_count; ++r) {
    for (std::size_t i = 0; i < types.size(); ++i) {
      const double scale = types[i].load_scale * cfg.intensity;
      for (std::size_t t = 0; t < horizon; ++t) {
        double shape = deterministic_load(static_cast<double>(t), phases[r], cfg.nu);
        if (cfg.noise_sigma > 0.0) shape += cfg.noise_sigma * noise(noise_rng);
        shape = std::max(0.0, shape);
        m.set(r, i, t, scale * seasonal_factor(t, cfg.seasonal_amplitude) * shape);
      }
    }
  }
  return m;
}

void write_load_csv(std::ostream& out, const LoadMatrix& loads, const std::vector<TrafficType>& types) {
  if (types.size() != loads.type_count()) throw std::invalid_argument("write_load_csv: type list mismatch");
  out << "du,type,t,load\n";
  for (std::size_t r = 0; r < loads.du_count(); ++r) {
    for (std::size_t i = 0; i < loads.type_count(); ++i) {
      for (std::size_t t = 0; t < loads.horizon(); ++t) {
        out << r << ',' << to_string(types[i].id) << ',' << t << ',' << csv::num(loads.at(r, i, t)) << '\n';
      }
    }
  }
}

LoadMatrix read_load_csv(std::istream& in, const std::vector<TrafficType>& types) {
  csv::Reader reader(in, "load matrix");
  reader.expect_header({"du", "type", "t", "load"});
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> entries;
  std::size_t dus = 0;
  std::size_t horizon = 0;
  while (auto row = reader.next()) {
    const auto du = reader.to_index((*row)[0]);
    const auto kind = traffic_kind_from_string((*row)[1]);
    const auto t = reader.to_index((*row)[2]);
    const double load = reader.to_double((*row)[3]);
    if (load < 0.0) reader.fail("negative load");
    auto it = std::find_if(types.begin(), types.end(), [&](const TrafficType& ty) { return ty.id == kind; });
    if (it == types.end()) reader.fail("traffic type not configured");
    entries[{du, static_cast<std::size_t>(it - types.begin()), t}] = load;
    dus = std::max(dus, du + 1);
    horizon = std::max(horizon, t + 1);
  }
  if (entries.size() != dus * types.size() * horizon) {
    throw DataError("load matrix: expected a dense grid of " + std::to_string(dus * types.size() * horizon) +
                    " entries, found " + std::to_string(entries.size()));
  }
  LoadMatrix m(dus, types.size(), horizon);
  for (const auto& [key, v] : entries) m.set(std::get<0>(key), std::get<1>(key), std::get<2>(key), v);
  return m;
}

}  // namespace greenran
