#include "greenran/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace greenran {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::DRAN: return "dran";
    case PolicyKind::CRAN: return "cran";
    case PolicyKind::RldfsQL: return "rldfs_ql";
    case PolicyKind::RldfsSarsa: return "rldfs_sarsa";
    case PolicyKind::Oracle: return "oracle";
  }
  return "?";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  if (name == "dran" || name == "d-ran") return PolicyKind::DRAN;
  if (name == "cran" || name == "c-ran") return PolicyKind::CRAN;
  if (name == "rldfs_ql" || name == "ql" || name == "q_learning") return PolicyKind::RldfsQL;
  if (name == "rldfs_sarsa" || name == "sarsa") return PolicyKind::RldfsSarsa;
  if (name == "oracle") return PolicyKind::Oracle;
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

bool is_learned(PolicyKind kind) { return kind == PolicyKind::RldfsQL || kind == PolicyKind::RldfsSarsa; }

PolicyShape policy_shape(const EnvConfig& config, std::size_t node) {
  PolicyShape shape;
  shape.is_cu = node == config.du_count;
  shape.splittable_types = config.splittable_types().size();
  shape.functions = config.functions;
  const auto& lv = config.dispatch_levels;
  shape.max_dispatch_level = static_cast<std::size_t>(std::max_element(lv.begin(), lv.end()) - lv.begin());
  return shape;
}

NodeAction dran_policy(const Observation&, const PolicyShape& shape) {
  NodeAction a;
  if (!shape.is_cu) a.splits.assign(shape.splittable_types, shape.functions);
  a.dispatch_level = shape.max_dispatch_level;
  return a;
}

NodeAction cran_policy(const Observation&, const PolicyShape& shape) {
  NodeAction a;
  if (!shape.is_cu) a.splits.assign(shape.splittable_types, 0);
  a.dispatch_level = shape.max_dispatch_level;
  return a;
}

std::vector<NodeAction> baseline_actions(PolicyKind kind, const Environment& env) {
  if (kind != PolicyKind::DRAN && kind != PolicyKind::CRAN) {
    throw std::invalid_argument("baseline_actions: " + std::string(to_string(kind)) + " is not a static baseline");
  }
  std::vector<NodeAction> out;
  out.reserve(env.node_count());
  for (std::size_t n = 0; n < env.node_count(); ++n) {
    const auto shape = policy_shape(env.config(), n);
    const auto obs = env.observe(n);
    out.push_back(kind == PolicyKind::DRAN ? dran_policy(obs, shape) : cran_policy(obs, shape));
  }
  return out;
}

}  // namespace greenran
