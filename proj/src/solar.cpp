#include "greenran/solar.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "greenran/csv.hpp"
#include "greenran/rng.hpp"

namespace greenran {

SolarTrace load_trace(const std::filesystem::path& path, std::size_t horizon,
                      std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    throw TraceError(TraceError::Kind::MissingFile, 0, "solar trace " + path.string() + ": cannot open file");
  }
  const std::string label = "solar trace " + path.string();
  SolarTrace trace;
  trace.site_name = path.stem().string();

  csv::Reader reader(in, label);
  try {
    reader.expect_header({"hour", "kwh_per_unit"});
  } catch (const DataError& e) {
    throw TraceError(TraceError::Kind::MalformedRow, 0, e.what());
  }
  std::size_t rows = 0;
  while (true) {
    std::optional<std::vector<std::string>> row;
    double value = 0.0;
    try {
      row = reader.next();
      if (!row) break;
      (void)reader.to_index((*row)[0]);
      value = reader.to_double((*row)[1]);
    } catch (const DataError& e) {
      throw TraceError(TraceError::Kind::MalformedRow, reader.row(), e.what());
    }
    ++rows;
    if (value < 0.0) {
      throw TraceError(TraceError::Kind::NegativeValue, rows,
                       label + ": row " + std::to_string(rows) + " has negative generation " + csv::num(value));
    }
    if (trace.values.size() < horizon) trace.values.push_back(value);
  }
  if (rows < horizon) {
    throw TraceError(TraceError::Kind::TooShort, 0,
                     label + ": " + std::to_string(rows) + " rows, horizon needs " + std::to_string(horizon));
  }
  if (rows > horizon && warnings != nullptr) {
    warnings->push_back(label + ": truncated " + std::to_string(rows) + " rows to horizon " +
                        std::to_string(horizon));
  }
  return trace;
}

void write_trace(const SolarTrace& trace, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "hour,kwh_per_unit\n";
  for (std::size_t t = 0; t < trace.values.size(); ++t) out << t << ',' << csv::num(trace.values[t]) << '\n';
  csv::write_file_atomic(path, out.str());
}

SolarTrace synthetic_trace(const SyntheticSolarParams& params, std::size_t horizon, std::uint64_t seed,
                           std::string site_name) {
  if (!(params.sunrise >= 0.0 && params.sunrise < params.sunset && params.sunset <= 24.0)) {
    throw std::invalid_argument("synthetic_trace: need 0 <= sunrise < sunset <= 24");
  }
  if (!(params.peak_kwh >= 0.0) || !(params.cloud_sigma >= 0.0)) {
    throw std::invalid_argument("synthetic_trace: peak and cloud_sigma must be >= 0");
  }
  auto rng = make_stream(seed, "solar-clouds");
  std::normal_distribution<double> z(0.0, 1.0);
  const double s = params.cloud_sigma;
  const double span = params.sunset - params.sunrise;

  SolarTrace trace{std::move(site_name), std::vector<double>(horizon, 0.0)};
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto hour = static_cast<double>(t % 24);
    // One draw per hour keeps the cloud sequence aligned with t whatever the daylight window.
    const double cloud = s > 0.0 ? std::exp(s * z(rng) - 0.5 * s * s) : 1.0;
    if (hour < params.sunrise || hour >= params.sunset) continue;
    const double arc = std::sin(std::numbers::pi * (hour - params.sunrise) / span);
    trace.values[t] = std::max(0.0, params.peak_kwh * arc * cloud);
  }
  return trace;
}

}  // namespace greenran
