#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "greenran/error.hpp"

namespace greenran {

/// Renewable generation per panel unit, kWh per hour, one value per timestep.
struct SolarTrace {
  std::string site_name;
  std::vector<double> values;

  double at(std::size_t t) const { return values[t % values.size()]; }
};

class TraceError : public DataError {
 public:
  enum class Kind { MissingFile, MalformedRow, NegativeValue, TooShort };

  TraceError(Kind kind, std::size_t row, const std::string& what)
      : DataError(what), kind_(kind), row_(row) {}

  Kind kind() const { return kind_; }
  /// 1-based data row (0 when the error is not tied to a row).
  std::size_t row() const { return row_; }

 private:
  Kind kind_;
  std::size_t row_;
};

/// Reads a `hour,kwh_per_unit` CSV. Files longer than `horizon` are truncated
/// and a note is appended to `warnings` when given.
SolarTrace load_trace(const std::filesystem::path& path, std::size_t horizon,
                      std::vector<std::string>* warnings = nullptr);

void write_trace(const SolarTrace& trace, const std::filesystem::path& path);

struct SyntheticSolarParams {
  double peak_kwh = 0.3;
  double sunrise = 6.0;
  double sunset = 18.0;
  double cloud_sigma = 0.0;
};

/// Half-sine daylight arc scaled to `peak_kwh`, zero outside [sunrise, sunset),
/// times a mean-one lognormal cloud factor per hour.
SolarTrace synthetic_trace(const SyntheticSolarParams& params, std::size_t horizon, std::uint64_t seed,
                           std::string site_name = "synthetic");

}  // namespace greenran
