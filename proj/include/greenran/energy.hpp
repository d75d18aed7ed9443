#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "greenran/types.hpp"

namespace greenran {

/// Energy drawn by one node in a timestep and the renewable share of it.
struct NodeDraw {
  double energy_kwh = 0.0;
  double dispatch_kwh = 0.0;
};

/// DU consumption: static term plus load x functions-at-DU x E_D over all types.
double du_energy(std::span<const double> loads_per_type, const SplitVector& splits,
                 const NodeEnergyConfig& cfg, const FunctionChain& chain);

/// CU consumption: static term plus the functions every DU left to the CU.
/// `loads[r]` and `splits[r]` describe DU r at the same timestep.
double cu_energy(std::span<const std::vector<double>> loads, std::span<const SplitVector> splits,
                 const NodeEnergyConfig& cfg, const FunctionChain& chain);

/// On-grid bill of one timestep. Rejects dispatch above consumption.
double step_opex(NodeDraw cu, std::span<const NodeDraw> dus, double price);

/// True iff the placement vector is a run of 1s followed by a run of 0s.
bool validate_split_chain(std::span<const std::uint8_t> placement);

}  // namespace greenran
