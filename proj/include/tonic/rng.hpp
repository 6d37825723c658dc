#pragma once

#include <cstdint>
#include <random>

#include "tonic/edge.hpp"

namespace tonic {

using Rng = std::mt19937_64;

// Per-trial seed derivation: one splitmix step on a distinct stream offset,
// so trial seeds are independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

inline bool flip_coin(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Uniform in [0, n). Pre: n > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace tonic
