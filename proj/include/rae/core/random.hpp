#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rae {

using Rng = std::mt19937_64;

/// Uniform draw in [0, 1) built from the raw engine output, so sequences do
/// not depend on the standard library's distribution implementations.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform01(rng) < p;
}

/// Box-Muller normal draw.
inline double gaussian(Rng& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// splitmix64 finalizer; derives independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace rae
