#pragma once

#include <cstdint>
#include <vector>

namespace aplab {

// Standalone segmented machinery, independent of PrimeTable.  Serves two
// roles: a cross-check oracle for the linear sieve, and the memory-light
// backend for interval experiments whose windows sit far above any
// reasonable full-table limit.

// Primes <= limit by a plain Eratosthenes sieve.
std::vector<std::uint32_t> simple_primes(std::uint32_t limit);

// pi([lo, hi]) by segmented sieving; needs only primes up to sqrt(hi).
std::uint64_t count_primes_segmented(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t segment_size = 1 << 18);

// Per-n data for a window [lo, hi]: Omega (prime factors with multiplicity)
// and primality.
struct OmegaSegment {
  std::uint64_t lo = 0;
  std::vector<std::uint8_t> big_omega;

  int omega_at(std::uint64_t n) const { return big_omega[n - lo]; }
  bool prime_at(std::uint64_t n) const { return big_omega[n - lo] == 1 && n >= 2; }
};

// Holds the base primes once; segments anywhere below max_value can then be
// sieved repeatedly at O((hi-lo) log log hi) each.
class SegmentSiever {
public:
  explicit SegmentSiever(std::uint64_t max_value);

  std::uint64_t max_value() const { return max_value_; }
  OmegaSegment omega_segment(std::uint64_t lo, std::uint64_t hi) const;

private:
  std::uint64_t max_value_;
  std::vector<std::uint32_t> base_primes_;  // all primes <= sqrt(max_value)
};

} // namespace aplab
