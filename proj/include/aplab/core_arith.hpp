#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace aplab {

// Smallest-prime-factor table over [2, limit].  Built once with a linear
// sieve, immutable afterwards; all queries are pure and safe to share
// across threads.
struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> spf;     // spf[n] = smallest prime factor of n, spf[n] = n iff prime
  std::vector<std::uint32_t> primes;  // all primes <= limit, ascending

  bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
  std::uint32_t smallest_factor(std::uint64_t n) const { return spf[n]; }
  bool covers(std::uint64_t n) const { return n >= 1 && n <= limit; }
};

inline constexpr std::uint64_t kDefaultTableEntryCeiling = 300'000'000;

// Linear sieve.  limit < 2 -> std::invalid_argument; limit above the entry
// ceiling -> resource_limit_error.
PrimeTable build_prime_table(std::uint64_t limit,
                             std::uint64_t entry_ceiling = kDefaultTableEntryCeiling);

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;  // (prime, exponent), primes ascending

  int big_omega() const {  // number of prime factors with multiplicity
    int s = 0;
    for (const auto& [p, e] : factors) s += e;
    return s;
  }
  int small_omega() const { return static_cast<int>(factors.size()); }
};

// Canonical factorization via the table; n = 1 yields an empty factor list.
Factorization factorize(std::uint64_t n, const PrimeTable& table);

enum class FactorCount {
  with_multiplicity,  // Omega(n), the default
  distinct            // omega(n), exploratory
};

// True iff n has exactly k prime factors (counted per `mode`).
bool is_Ek(std::uint64_t n, int k, const PrimeTable& table,
           FactorCount mode = FactorCount::with_multiplicity);

// k-fold divisor function d_k(n): number of ordered k-tuples with product n.
// Multiplicative with d_k(p^e) = C(e+k-1, k-1).  Overflow of the product
// throws std::overflow_error.
std::uint64_t divisor_function(std::uint64_t n, int k, const PrimeTable& table);

// (sum_{n<=X} d_j(n)^c d_k(n)^d) / (X (log X)^(j^c k^d - 1)).  The numerator
// accumulates in 128-bit arithmetic and throws std::overflow_error rather
// than wrapping.  Callers assert boundedness across a geometric X-grid.
double shiu_ratio(std::uint64_t X, int j, int c, int k, int d, const PrimeTable& table);

// Psi(x, y): count of n <= x whose prime factors are all <= y (n = 1 counts).
std::uint64_t smooth_count(std::uint64_t x, std::uint64_t y, const PrimeTable& table);

// pi(x) from the table (x <= limit).
std::uint64_t prime_count(std::uint64_t x, const PrimeTable& table);

} // namespace aplab
