#pragma once

#include <cstddef>
#include <vector>

#include "greenran/env.hpp"

namespace greenran {

enum class OracleMode {
  /// Dispatch restricted to the environment's level set (like-for-like with agents).
  Levels,
  /// Any dispatch on a grid of `grid_step` kWh; a lower bound for every policy.
  Grid,
};

struct OracleLimits {
  std::size_t max_horizon = 48;
  std::size_t max_dus = 2;
  std::size_t max_functions = 3;
  std::size_t max_frontier = 500000;  // surviving partial schedules per timestep
};

struct OracleInstance {
  EnvConfig env;  // env.horizon is the planning horizon
  EnvData data;
  OracleMode mode = OracleMode::Levels;
  double grid_step = 1.0;
  OracleLimits limits;
};

struct OracleSolution {
  double total_opex = 0.0;
  /// Joint action per timestep (Levels mode only; empty in Grid mode).
  std::vector<std::vector<NodeAction>> actions;
  /// Split points of the splittable types per timestep and DU.
  std::vector<std::vector<std::vector<std::size_t>>> splits;
  /// Dispatch per timestep and node, kWh.
  std::vector<std::vector<double>> dispatch_kwh;
  std::size_t peak_frontier = 0;
};

/// Exact minimum on-grid cost over all split and dispatch schedules.
///
/// Forward dynamic programming over (t, battery vector). A partial schedule
/// is discarded when another one reached the same timestep with no higher
/// cost and at least as much stored energy at every node: the per-step cost
/// is non-increasing and the next battery level non-decreasing in the
/// available energy, so the dominating schedule can copy any continuation
/// at no extra cost.
///
/// Throws std::invalid_argument when the instance exceeds the limits or, in
/// Grid mode, a generation/consumption quantity is not a multiple of the grid step.
OracleSolution solve_oracle(const OracleInstance& instance);

}  // namespace greenran
