#pragma once

#include <cstdint>
#include <random>

namespace cfs {

// All seeded randomness in the library flows through this engine. Uniform
// doubles are derived from raw engine output instead of
// std::uniform_real_distribution so that a seed maps to the same bits on
// every standard library implementation.
using RandomEngine = std::mt19937_64;

/// Uniform on [0, 1), 53 random mantissa bits.
inline double uniform01(RandomEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1]; never returns zero.
inline double uniform_positive(RandomEngine& rng) {
  return 1.0 - uniform01(rng);
}

}  // namespace cfs
