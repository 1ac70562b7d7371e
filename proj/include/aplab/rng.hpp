#pragma once

#include <cstdint>

namespace aplab {

// splitmix64: tiny, fast, platform-independent generator used wherever a
// report records a seed.  Every random family in the test fixtures is
// reproducible from a single 64-bit seed.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  // +1 or -1.
  int next_sign() { return (next() & 1) ? 1 : -1; }
};

// Derives an independent stream for a substream index (e.g. one RNG per
// stratum), so results do not depend on processing order.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x510e527fade682d1ULL + index * 0x9e3779b97f4a7c15ULL));
  mix.next();
  return mix;
}

} // namespace aplab
