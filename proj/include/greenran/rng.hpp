#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace greenran {

using Rng = std::mt19937_64;

/// Seed for a named sub-stream ("traffic", "solar-clouds", "exploration", ...)
/// so that each source of randomness can be varied independently.
std::uint64_t stream_seed(std::uint64_t run_seed, std::string_view stream);

inline Rng make_stream(std::uint64_t run_seed, std::string_view stream) {
  return Rng(stream_seed(run_seed, stream));
}

}  // namespace greenran
