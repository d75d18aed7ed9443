#include "greenran/energy.hpp"

#include <stdexcept>
#include <string>

namespace greenran {

double du_energy(std::span<const double> loads_per_type, const SplitVector& splits,
                 const NodeEnergyConfig& cfg, const FunctionChain& chain) {
  if (loads_per_type.size() != splits.size()) {
    throw std::invalid_argument("du_energy: one split point per traffic type required");
  }
  splits.validate(chain);
  double dynamic = 0.0;
  for (std::size_t i = 0; i < loads_per_type.size(); ++i) {
    if (!(loads_per_type[i] >= 0.0)) throw std::invalid_argument("du_energy: negative load");
    dynamic += loads_per_type[i] * static_cast<double>(splits[i]) * cfg.dynamic_kwh;
  }
  return cfg.static_kwh + dynamic;
}

double cu_energy(std::span<const std::vector<double>> loads, std::span<const SplitVector> splits,
                 const NodeEnergyConfig& cfg, const FunctionChain& chain) {
  if (loads.size() != splits.size()) {
    throw std::invalid_argument("cu_energy: loads cover " + std::to_string(loads.size()) +
                                " DUs but splits cover " + std::to_string(splits.size()));
  }
  double dynamic = 0.0;
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r].size() != splits[r].size()) {
      throw std::invalid_argument("cu_energy: type count mismatch at DU " + std::to_string(r));
    }
    splits[r].validate(chain);
    for (std::size_t i = 0; i < loads[r].size(); ++i) {
      if (!(loads[r][i] >= 0.0)) throw std::invalid_argument("cu_energy: negative load");
      const auto at_cu = static_cast<double>(chain.count - splits[r][i]);
      dynamic += loads[r][i] * at_cu * cfg.dynamic_kwh;
    }
  }
  return cfg.static_kwh + dynamic;
}

namespace {

double on_grid(NodeDraw d, const char* node) {
  if (!(d.dispatch_kwh >= 0.0) || d.dispatch_kwh > d.energy_kwh) {
    throw std::invalid_argument(std::string("step_opex: dispatch at ") + node +
                                " outside [0, consumption]");
  }
  return d.energy_kwh - d.dispatch_kwh;
}

}  // namespace

double step_opex(NodeDraw cu, std::span<const NodeDraw> dus, double price) {
  if (!(price >= 0.0)) throw std::invalid_argument("step_opex: negative price");
  double grid = on_grid(cu, "CU");
  for (const auto& d : dus) grid += on_grid(d, "DU");
  return grid * price;
}

bool validate_split_chain(std::span<const std::uint8_t> placement) {
  bool seen_cu = false;
  for (auto a : placement) {
    if (a == 0) {
      seen_cu = true;
    } else if (seen_cu) {
      return false;
    }
  }
  return true;
}

}  // namespace greenran
