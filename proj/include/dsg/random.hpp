#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dsg {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed from a master seed and a path of stream
/// indices: seed' = splitmix64(...splitmix64(splitmix64(master) ^ i0)... ^ ik).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = splitmix64(master);
  for (auto i : path) s = splitmix64(s ^ i);
  return s;
}

// The std:: distributions are implementation-defined; these two are not, so
// seeded output is identical across standard libraries.

/// Uniform integer in [0, bound). bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace dsg
