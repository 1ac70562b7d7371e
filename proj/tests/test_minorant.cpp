#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aplab/core_arith.hpp"
#include "aplab/minorant.hpp"
#include "aplab/parallel.hpp"
#include "aplab/rng.hpp"
#include "aplab/segmented_sieve.hpp"

using namespace aplab;

namespace {

// Formula-level reference evaluator: enumerates decompositions by trial
// division and recomputes every roughness indicator from scratch.  No domain
// guard, so it can also exercise configurations below 2 sqrt X.
int rough_ref(std::uint64_t m, double z, const std::vector<std::uint32_t>& primes) {
  if (m == 1) return 1;
  for (std::uint32_t p : primes) {
    if (static_cast<double>(p) >= z) break;
    if (m % p == 0) return 0;
  }
  return 1;
}

int rho_minus_ref(std::uint64_t n, const MinorantParams& P,
                  const std::vector<std::uint32_t>& primes) {
  std::vector<std::uint64_t> divs;
  std::uint64_t rest = n;
  for (std::uint32_t p : primes) {
    if (static_cast<std::uint64_t>(p) * p > rest) break;
    if (rest % p == 0) {
      divs.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) divs.push_back(rest);

  int total = rough_ref(n, P.z, primes);
  for (std::uint64_t q : divs)
    if (static_cast<double>(q) >= P.z && static_cast<double>(q) < P.two_sqrtX)
      total -= rough_ref(n / q, P.z, primes);
  for (std::uint64_t q1 : divs)
    for (std::uint64_t q2 : divs) {
      if (!(static_cast<double>(q2) >= P.z && q2 < q1 &&
            static_cast<double>(q1) < P.q_cap))
        continue;
      const double pair = static_cast<double>(q1) * q2 * q2 * q2 * q2;
      if (!(pair < P.pair_cap)) continue;
      total += rough_ref(n / (q1 * q2), P.z, primes);
      for (std::uint64_t q3 : divs)
        if (static_cast<double>(q3) >= P.z && q3 < q2)
          total -= rough_ref(n / (q1 * q2 * q3), P.z, primes);
    }
  return total;
}

const PrimeTable& table_3e5() {
  static const PrimeTable t = build_prime_table(300000);
  return t;
}

}  // namespace

TEST_CASE("parameter derivation") {
  const MinorantParams p = MinorantParams::make(1000000);
  CHECK(p.z == doctest::Approx(std::pow(1e6, 2.0 / 11.0)).epsilon(1e-15));
  CHECK(p.P1 == doctest::Approx(std::pow(std::log(1e6), 1.1)).epsilon(1e-15));
  CHECK(p.h1 == doctest::Approx(std::pow(1e6, 0.99)).epsilon(1e-15));
  CHECK(p.n_lo == 2000);
  CHECK(p.n_hi == 3000000);
  CHECK(MinorantParams::make(250000).n_lo == 1000);  // 2 sqrt X integral here

  CHECK_THROWS_AS(MinorantParams::make(50), std::invalid_argument);
  CHECK_THROWS_AS(MinorantParams::make(1000000, 0.01, 2.1, 1.05), std::invalid_argument);
  CHECK_NOTHROW(MinorantParams::make(1000000, 0.01, 2.1, 1.05, true));
}

TEST_CASE("roughness indicator") {
  const PrimeTable& t = table_3e5();
  CHECK(rho_rough(7, 5.0, t) == 1);
  CHECK(rho_rough(15, 4.0, t) == 0);
  CHECK(rho_rough(1, 100.0, t) == 1);
  CHECK(rho_rough(49, 7.0, t) == 1);
  CHECK(rho_rough(49, 7.5, t) == 0);
  CHECK_THROWS_AS(rho_rough(0, 5.0, t), std::invalid_argument);
  CHECK_THROWS_AS(rho_rough(10, 1.5, t), std::invalid_argument);
}

TEST_CASE("buchstab identity residual vanishes") {
  const PrimeTable& t = table_3e5();
  // hand cases
  CHECK(rho_rough(15, 4.0, t) == 0);
  CHECK(rho_rough(15, 2.0, t) == 1);
  CHECK(rho_rough(5, 3.0, t) == 1);
  CHECK(buchstab_identity_residual(15, 2.0, 4.0, t) == 0);
  CHECK(buchstab_identity_residual(7, 2.0, 4.0, t) == 0);
  CHECK(buchstab_identity_residual(100, 5.0, 5.0, t) == 0);  // degenerate w = z

  const double cuts[5] = {2, 3, 5, 10, 30};
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (std::uint64_t n = 1; n <= 20000; ++n)
        REQUIRE(buchstab_identity_residual(n, cuts[a], cuts[b], t) == 0);
}

TEST_CASE("rho_minus matches the reference evaluator, exhaustive at X = 1e4") {
  const MinorantParams P = MinorantParams::make(10000);
  const PrimeTable& t = table_3e5();
  const auto primes = simple_primes(40000);
  for (std::uint64_t n = P.n_lo; n <= P.n_hi; ++n)
    REQUIRE(rho_minus(n, P, t) == rho_minus_ref(n, P, primes));
}

TEST_CASE("rho_minus structure: primes give 1, even numbers give 0") {
  const MinorantParams P = MinorantParams::make(100000);
  const PrimeTable t = build_prime_table(P.n_hi);
  const double bound_factor =
      4.0 * std::pow(std::log(3.0e5) / std::log(P.z), 3.0);
  for (std::uint64_t n = P.n_lo; n <= P.n_hi; ++n) {
    const int v = rho_minus(n, P, t);
    if (t.is_prime(n)) REQUIRE(v == 1);
    if (n % 2 == 0) REQUIRE(v == 0);
    REQUIRE(v <= (t.is_prime(n) ? 1 : 0));
    REQUIRE(std::abs(v) <= bound_factor * rho_rough(n, P.z, t));
  }
  CHECK_THROWS_AS(rho_minus(P.n_lo - 1, P, t), std::invalid_argument);
  CHECK_THROWS_AS(rho_minus(P.n_hi + 1, P, t), std::invalid_argument);
}

TEST_CASE("term bookkeeping on a two-prime product inside both caps") {
  // configuration sits below the operation domain; check it on the reference
  const MinorantParams P = MinorantParams::make(1000000);
  const auto primes = simple_primes(1000);
  // 13 * 17: both in [z, X^{1/4 - 2 eps}), 17 * 13^4 < X^{1 - 2 eps}
  CHECK(P.z < 13.0);
  CHECK(17.0 < P.q_cap);
  CHECK(17.0 * 13 * 13 * 13 * 13 < P.pair_cap);
  CHECK(rho_minus_ref(13 * 17, P, primes) == 0);  // 1 - 2 + 1 + 0
  // 17 * 19: pair cap fails, so only the single-q subtractions act
  CHECK(!(19.0 * 17 * 17 * 17 * 17 < P.pair_cap));
  CHECK(rho_minus_ref(17 * 19, P, primes) == -1);  // 1 - 2 + 0 + 0
}

TEST_CASE("rho_minus equals primes minus the two discarded sums, exhaustively") {
  // The construction drops two non-negative sums from an exact recursion, so
  //   rho^-(n) = 1_P(n) - A(n) - B(n)
  // must hold per n, where A sums rho(n/(q1 q2), q2) over prime pairs
  // q1 > q2 >= z with q1 < 2 sqrt X and at least one cap violated, and B sums
  // rho(n/(q1 q2 q3 q4), q4) over 4-tuples with both caps satisfied.  This
  // re-derives the minorant through a different decomposition route.
  const MinorantParams P = MinorantParams::make(100000);
  const PrimeTable t = build_prime_table(P.n_hi);
  auto rough = [&](std::uint64_t m, double w) {
    return m == 1 || static_cast<double>(t.spf[m]) >= w;
  };
  std::vector<std::uint64_t> divs;
  for (std::uint64_t n = P.n_lo; n <= P.n_hi; ++n) {
    divs.clear();
    std::uint64_t rest = n;
    while (rest > 1) {
      const std::uint64_t p = t.spf[rest];
      while (rest % p == 0) rest /= p;
      divs.push_back(p);
    }
    int discarded = 0;
    const int r = static_cast<int>(divs.size());
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < i; ++j) {
        const std::uint64_t q1 = divs[i], q2 = divs[j];
        if (!(static_cast<double>(q2) >= P.z && static_cast<double>(q1) < P.two_sqrtX))
          continue;
        const double pair = static_cast<double>(q1) * q2 * q2 * q2 * q2;
        if (static_cast<double>(q1) >= P.q_cap || pair >= P.pair_cap) {
          discarded += rough(n / (q1 * q2), static_cast<double>(q2));
        } else {
          for (int k = 0; k < j; ++k)
            for (int l = 0; l < k; ++l) {
              const std::uint64_t q3 = divs[k], q4 = divs[l];
              if (static_cast<double>(q4) >= P.z)
                discarded += rough(n / (q1 * q2 * q3 * q4), static_cast<double>(q4));
            }
        }
      }
    const int expected = (t.is_prime(n) ? 1 : 0) - discarded;
    REQUIRE(rho_minus(n, P, t) == expected);
  }
}

TEST_CASE("minorant scan at X = 1e5: clean report, deterministic across threads") {
  const MinorantParams P = MinorantParams::make(100000);
  const PrimeTable t = build_prime_table(P.n_hi);

  set_max_threads(1);
  const MinorantScanReport one = minorant_scan(P, t);
  set_max_threads(2);
  const MinorantScanReport two = minorant_scan(P, t);
  set_max_threads(0);

  CHECK(one.upper_violations == 0);
  CHECK(one.bound_violations == 0);
  CHECK(one.primes_with_value_one == one.primes_in_range);
  CHECK(one.n_scanned == P.n_hi - P.n_lo + 1);
  CHECK(one.histogram == two.histogram);
  CHECK(one.upper_violations == two.upper_violations);
  CHECK(one.primes_in_range == two.primes_in_range);

  std::uint64_t hist_total = 0;
  for (const auto& [value, count] : one.histogram) hist_total += count;
  CHECK(hist_total == one.n_scanned);
}

TEST_CASE("minorant value support at X = 1e6 stays within [-3, 1]") {
  const MinorantParams P = MinorantParams::make(1000000);
  const PrimeTable t = build_prime_table(P.n_hi);
  const MinorantScanReport rep = minorant_scan(P, t);
  REQUIRE(!rep.histogram.empty());
  CHECK(rep.histogram.begin()->first >= -3);
  CHECK(rep.histogram.rbegin()->first <= 1);
  CHECK(rep.histogram.rbegin()->first == 1);
}

TEST_CASE("window sums: prefix equals the naive double loop") {
  const MinorantParams P = MinorantParams::make(100000);
  const PrimeTable t = build_prime_table(P.n_hi);
  const WindowSums sums(P, t);
  REQUIRE(!sums.window_primes().empty());

  SplitMix64 rng(0x77aabbccULL);
  for (int i = 0; i < 100; ++i) {
    const double x = 1e5 + rng.next_double() * 1e5;
    const double hwin = rng.next_double() * (3e5 - x - 1);
    std::int64_t naive = 0;
    for (std::uint32_t p : sums.window_primes()) {
      const auto lo = static_cast<std::uint64_t>(std::floor(x / p)) + 1;
      const auto hi = static_cast<std::uint64_t>(std::floor((x + hwin) / p));
      for (std::uint64_t n = lo; n <= hi; ++n) {
        if (n < P.n_lo || n > P.n_hi) continue;
        naive += rho_minus(n, P, t);
      }
    }
    REQUIRE(sums.window_sum(x, hwin) == naive);
  }
  CHECK(sums.window_sum(150000.5, 0.0) == 0);
  CHECK_THROWS_AS(sums.window_sum(299999.0, 10.0), std::invalid_argument);
}

TEST_CASE("window sums: constructed single-hit window") {
  const MinorantParams P = MinorantParams::make(100000);
  const PrimeTable t = build_prime_table(P.n_hi);
  const WindowSums sums(P, t);
  // m = 17 * 641: 641 prime and above 2 sqrt X, no other window prime divides m
  const std::uint64_t m = 17 * 641;
  REQUIRE(t.is_prime(641));
  REQUIRE(641.0 >= P.two_sqrtX);
  CHECK(sums.window_sum(static_cast<double>(m) - 0.5, 1.0) == 1);
}

TEST_CASE("variance experiment") {
  MinorantParams P = MinorantParams::make(100000);
  const PrimeTable t = build_prime_table(P.n_hi);

  const VarianceReport rep = variance_experiment(P, t, 200);
  CHECK(rep.mean_square > 0.0);
  CHECK(rep.ratio == doctest::Approx(rep.mean_square * std::pow(std::log(1e5), 2.0)));
  CHECK(rep.sample == 200);

  // equal window lengths make every term vanish identically
  MinorantParams equal = P;
  equal.h = equal.h1;
  CHECK(variance_experiment(equal, t, 100).mean_square == 0.0);

  CHECK_THROWS_AS(variance_experiment(P, t, 50), std::invalid_argument);
}

TEST_CASE("two-prime interval counts: constructed hit and degenerate window") {
  // X chosen so that m = 17 * 641 lands just inside the first window
  const std::uint64_t X = 17 * 641 - 1;
  const MinorantParams P = MinorantParams::make(X);
  const PrimeTable t = build_prime_table(60000);
  const IntervalReport rep = count_E2_intervals(X, P, t, 1);
  REQUIRE(rep.counts.size() == 1);
  CHECK(rep.counts[0] >= 1);
  CHECK(rep.predicted > 0.0);

  // tiny window: almost every interval misses
  const MinorantParams narrow = MinorantParams::make(100000, 0.01, 0.3, 1.1, true);
  const PrimeTable t2 = build_prime_table(300000);
  const IntervalReport rep2 = count_E2_intervals(100000, narrow, t2, 200);
  CHECK(rep2.failures > 180);
}

TEST_CASE("two-prime interval counts vs the Mertens prediction at X = 1e6") {
  const std::uint64_t X = 1000000;
  const MinorantParams P = MinorantParams::make(X);
  const PrimeTable t = build_prime_table(130000);  // (2X + h)/19 and slack
  const IntervalReport rep = count_E2_intervals(X, P, t, 500);
  CHECK(rep.mean_count < 3.0 * rep.predicted);
  CHECK(rep.mean_count > rep.predicted / 3.0);
  CHECK(rep.failures < 100);  // most intervals contain a hit

  const PrimeTable tiny = build_prime_table(1000);
  CHECK_THROWS_AS(count_E2_intervals(X, P, tiny, 10), std::invalid_argument);
}

TEST_CASE("three-prime all-intervals experiment") {
  const IntervalReport one = count_E3_all_intervals(1000000, 1000000, 1);
  REQUIRE(one.counts.size() == 1);
  CHECK(one.counts[0] == 1);
  CHECK(one.failures == 0);

  // forced empty window
  const IntervalReport empty = count_E3_all_intervals(1000000, 1000000, 1, -1000.0);
  CHECK(empty.failures == 1);

  const IntervalReport grid = count_E3_all_intervals(1000000, 10000000, 50);
  CHECK(grid.failures == 0);

  set_max_threads(1);
  const IntervalReport again = count_E3_all_intervals(1000000, 10000000, 50);
  set_max_threads(0);
  CHECK(again.counts == grid.counts);
  CHECK(again.x_grid == grid.x_grid);
}
