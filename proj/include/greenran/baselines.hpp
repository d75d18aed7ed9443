#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "greenran/env.hpp"

namespace greenran {

enum class PolicyKind { DRAN, CRAN, RldfsQL, RldfsSarsa, Oracle };

std::string_view to_string(PolicyKind kind);
/// Accepts dran, cran, rldfs_ql (ql), rldfs_sarsa (sarsa), oracle.
PolicyKind policy_kind_from_string(std::string_view name);
bool is_learned(PolicyKind kind);

/// What a static policy needs to know about the agent it drives.
struct PolicyShape {
  bool is_cu = false;
  std::size_t splittable_types = 1;
  std::size_t functions = 4;
  std::size_t max_dispatch_level = 2;  // index of the largest level fraction
};

PolicyShape policy_shape(const EnvConfig& config, std::size_t node);

/// Everything at the DU, greedy renewable dispatch.
NodeAction dran_policy(const Observation& obs, const PolicyShape& shape);
/// Splittable traffic fully at the CU, greedy renewable dispatch.
NodeAction cran_policy(const Observation& obs, const PolicyShape& shape);

/// Joint action of a static baseline (DRAN or CRAN) for the current step.
std::vector<NodeAction> baseline_actions(PolicyKind kind, const Environment& env);

}  // namespace greenran
