#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace recip {

/// The engine output of std::mt19937_64 is fixed by the standard, so every
/// sampler below is reproducible across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; n > 0.
inline uint64_t uniform_below(Rng& rng, uint64_t n) {
  const uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for (seed, stream, index).
inline Rng derive_rng(uint64_t seed, uint64_t stream, uint64_t index = 0) {
  return Rng(splitmix64(splitmix64(seed ^ splitmix64(stream)) + index));
}

}  // namespace recip
