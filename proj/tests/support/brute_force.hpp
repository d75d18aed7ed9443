#pragma once

#include "greenran/env.hpp"

namespace greenran::testing {

/// Minimum total OpEx over every joint action sequence, found by stepping
/// copies of `env` (from its current state) through all of them.
double brute_force_opex(const Environment& env);

}  // namespace greenran::testing
