#pragma once

#include <cstdint>

namespace setbound {

/// Stateless counter-based generator: each (seed, stream, index) triple maps
/// to an independent 64-bit value, so results never depend on evaluation
/// order or thread count.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double counter_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return static_cast<double>(counter_hash(seed, stream, index) >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi]; returns lo exactly when lo == hi.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                                 double lo, double hi) {
  if (lo == hi) return lo;
  const double v = lo + (hi - lo) * counter_unit(seed, stream, index);
  return v > hi ? hi : v;
}

}  // namespace setbound
