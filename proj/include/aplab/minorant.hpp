#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "aplab/core_arith.hpp"

namespace aplab {

// Parameters of the prime minorant rho^-(n) at ambient scale X:
// z = X^{2/11}, P1 = (log X)^a, h = (log X)^c, h1 = X^{99/100}.
// Unless `relaxed_a` is set, a must lie in [c - 1 - 1/10000, c - 1].
struct MinorantParams {
  std::uint64_t X = 0;
  double eps = 0.01;
  double c = 2.1;
  double a = 1.1;
  bool relaxed_a = false;

  // derived
  double z = 0;            // X^{2/11}
  double P1 = 0;           // (log X)^a
  double h = 0;            // (log X)^c
  double h1 = 0;           // X^{99/100}
  double two_sqrtX = 0;    // 2 sqrt(X)
  double q_cap = 0;        // X^{1/4 - 2 eps}
  double pair_cap = 0;     // X^{1 - 2 eps}, bound on q1 q2^4
  std::uint64_t n_lo = 0;  // ceil(2 sqrt X): lower end of the rho^- domain
  std::uint64_t n_hi = 0;  // 3 X

  static MinorantParams make(std::uint64_t X, double eps = 0.01, double c = 2.1,
                             double a = 1.1, bool relaxed_a = false);
};

// rho(n, z): 1 iff n has no prime factor below z (so rho(1, z) = 1).
int rho_rough(std::uint64_t n, double z, const PrimeTable& table);

// rho(n,z) - rho(n,w) + sum over primes q | n with w <= q < z of rho(n/q, q).
// Exactly zero for every input (the sieve recursion identity); returned so
// tests can assert it.
int buchstab_identity_residual(std::uint64_t n, double w, double z, const PrimeTable& table);

// The four-term minorant:
//   rho(n,z) - sum_{n=qm, z<=q<2 sqrt X} rho(m,z)
//            + sum_{n=q1 q2 m, z<=q2<q1<X^{1/4-2eps}, q1 q2^4 < X^{1-2eps}} rho(m,z)
//            - sum_{n=q1 q2 q3 m, same caps on q1,q2, z<=q3<q2} rho(m,z).
// Sums enumerate ordered tuples of strictly decreasing prime divisors of n;
// a repeated prime factor >= z enters through the single pair (q, n/q).
// n outside [2 sqrt X, 3X] -> std::invalid_argument.
int rho_minus(std::uint64_t n, const MinorantParams& params, const PrimeTable& table);

struct MinorantScanReport {
  std::uint64_t n_scanned = 0;
  std::uint64_t upper_violations = 0;   // rho^-(n) > 1_P(n)
  std::uint64_t bound_violations = 0;   // |rho^-(n)| > 4 (log 3X / log z)^3 rho(n, z)
  std::uint64_t primes_in_range = 0;
  std::uint64_t primes_with_value_one = 0;
  double bound_factor = 0;              // 4 (log 3X / log z)^3
  std::map<int, std::uint64_t> histogram;
};

// Exhaustive scan of n in [2 sqrt X, 3X]; requires 3X <= table.limit.
MinorantScanReport minorant_scan(const MinorantParams& params, const PrimeTable& table);

// Weight sequence w(m) = sum over primes p1 in (P1, 2P1], p1 | m, with
// m/p1 in the rho^- domain, of rho^-(m/p1), held as prefix sums: every
// window query sum_{x < m <= x + hwin} w(m) is O(1) after O(X) build.
class WindowSums {
public:
  WindowSums(const MinorantParams& params, const PrimeTable& table);

  // sum over x < p1 n <= x + hwin, p1 in (P1, 2P1] prime, of rho^-(n).
  // Requires x > 0 and x + hwin <= 3X.
  std::int64_t window_sum(double x, double hwin) const;

  // h1/(200 log P1 log X), the asymptotic floor the hwin = h1 sums are
  // measured against
  double reference_lower_bound() const;

  const MinorantParams& params() const { return params_; }
  const std::vector<std::uint32_t>& window_primes() const { return window_primes_; }

private:
  MinorantParams params_;
  std::vector<std::uint32_t> window_primes_;
  std::vector<std::int64_t> prefix_;  // prefix_[m] = sum_{k <= m} w(k)
};

// One-shot convenience around WindowSums (builds the prefix table each call).
std::int64_t weighted_window_sum(double x, double hwin, const MinorantParams& params,
                                 const PrimeTable& table);

struct VarianceReport {
  double mean_square = 0;       // average of (S_h/h - S_h1/h1)^2 over the x grid
  double ratio = 0;             // mean_square * (log X)^2
  double ci_half_width = 0;     // 1.96 sigma / sqrt(sample), same scaling as ratio
  std::uint64_t sample = 0;
};

// Deterministic x-grid x_i = X + i X / sample, i = 1..sample.
VarianceReport variance_experiment(const MinorantParams& params, const PrimeTable& table,
                                   std::uint64_t sample);

struct IntervalReport {
  std::vector<double> x_grid;
  std::vector<std::uint32_t> counts;
  std::vector<double> predicted_per_x;  // Mertens-type prediction per interval
  double predicted = 0;                 // mean prediction
  double mean_count = 0;
  std::uint64_t failures = 0;           // intervals with count 0
};

// Counts m in (x, x + (log x)^c] of the form p1 p2 with p1 in (P1, 2P1]
// prime and p2 = m/p1 prime, over `sample` evenly spaced x in [X, 2X].
// The table must cover (2X + h) / p1_min (only n = m/p1 is ever factored).
IntervalReport count_E2_intervals(std::uint64_t X, const MinorantParams& params,
                                  const PrimeTable& table, std::uint64_t sample);

// For `grid` geometrically spaced x in [x_lo, x_hi], reports whether
// (x, x + sqrt(x) (log x)^{1.55}] contains a number with exactly three prime
// factors.  Runs on a segmented sieve; the counts entries are 0/1.
IntervalReport count_E3_all_intervals(std::uint64_t x_lo, std::uint64_t x_hi,
                                      std::uint64_t grid, double exponent = 1.55);

} // namespace aplab
