#include "aplab/core_arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "aplab/errors.hpp"

namespace aplab {

PrimeTable build_prime_table(std::uint64_t limit, std::uint64_t entry_ceiling) {
  if (limit < 2) throw std::invalid_argument("build_prime_table: limit must be >= 2");
  if (limit > entry_ceiling)
    throw resource_limit_error("build_prime_table: limit " + std::to_string(limit) +
                               " exceeds entry ceiling " + std::to_string(entry_ceiling));

  PrimeTable t;
  t.limit = limit;
  t.spf.assign(limit + 1, 0);
  t.primes.reserve(static_cast<std::size_t>(
      limit > 100 ? 1.2 * static_cast<double>(limit) / std::log(static_cast<double>(limit))
                  : 32));

  // Linear sieve: each composite is struck exactly once, by its smallest
  // prime factor.
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (t.spf[i] == 0) {
      t.spf[i] = static_cast<std::uint32_t>(i);
      t.primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : t.primes) {
      if (p > t.spf[i] || i * p > limit) break;
      t.spf[i * p] = p;
    }
  }
  return t;
}

Factorization factorize(std::uint64_t n, const PrimeTable& table) {
  if (!table.covers(n))
    throw std::invalid_argument("factorize: n = " + std::to_string(n) +
                                " outside [1, " + std::to_string(table.limit) + "]");
  Factorization f;
  f.n = n;
  while (n > 1) {
    const std::uint64_t p = table.spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  return f;
}

bool is_Ek(std::uint64_t n, int k, const PrimeTable& table, FactorCount mode) {
  if (!table.covers(n))
    throw std::invalid_argument("is_Ek: n outside table coverage");
  if (k < 0) throw std::invalid_argument("is_Ek: k must be >= 0");
  int count = 0;
  while (n > 1) {
    const std::uint64_t p = table.spf[n];
    while (n % p == 0) {
      n /= p;
      if (mode == FactorCount::with_multiplicity) ++count;
    }
    if (mode == FactorCount::distinct) ++count;
    if (count > k) return false;
  }
  return count == k;
}

namespace {

// C(e+k-1, k-1), the exponent-local factor of d_k; overflow-checked.
std::uint64_t binomial_checked(int top, int bottom) {
  // top = e+k-1, bottom = min(k-1, e)
  bottom = std::min(bottom, top - bottom);
  std::uint64_t r = 1;
  for (int i = 1; i <= bottom; ++i) {
    // r * (top - bottom + i) / i stays integral at every step
    const std::uint64_t num = static_cast<std::uint64_t>(top - bottom + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      throw std::overflow_error("divisor_function: binomial overflow");
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

} // namespace

std::uint64_t divisor_function(std::uint64_t n, int k, const PrimeTable& table) {
  if (k < 1) throw std::invalid_argument("divisor_function: k must be >= 1");
  if (!table.covers(n))
    throw std::invalid_argument("divisor_function: n outside table coverage");
  std::uint64_t d = 1;
  while (n > 1) {
    const std::uint64_t p = table.spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    const std::uint64_t local = binomial_checked(e + k - 1, k - 1);
    if (local != 0 && d > std::numeric_limits<std::uint64_t>::max() / local)
      throw std::overflow_error("divisor_function: product overflow");
    d *= local;
  }
  return d;
}

namespace {

std::uint64_t int_pow_checked(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("shiu_ratio: term overflow");
    r *= base;
  }
  return r;
}

} // namespace

double shiu_ratio(std::uint64_t X, int j, int c, int k, int d, const PrimeTable& table) {
  if (X < 100) throw std::invalid_argument("shiu_ratio: X must be >= 100");
  if (j < 1 || j > 4 || k < 1 || k > 4 || c < 1 || c > 4 || d < 1 || d > 4)
    throw std::invalid_argument("shiu_ratio: parameters must lie in [1, 4]");
  if (!table.covers(X)) throw std::invalid_argument("shiu_ratio: X outside table coverage");

  unsigned __int128 sum = 0;
  const unsigned __int128 cap = ~static_cast<unsigned __int128>(0) >> 1;
  for (std::uint64_t n = 1; n <= X; ++n) {
    const std::uint64_t dj = divisor_function(n, j, table);
    const std::uint64_t dk = divisor_function(n, k, table);
    const std::uint64_t term =
        (j == k && c == d) ? int_pow_checked(dj, c + d)
                           : int_pow_checked(dj, c) * int_pow_checked(dk, d);
    sum += term;
    if (sum > cap) throw std::overflow_error("shiu_ratio: sum overflow");
  }

  // exponent j^c * k^d - 1 of the log factor
  double expo = 1.0;
  for (int i = 0; i < c; ++i) expo *= j;
  double expo2 = 1.0;
  for (int i = 0; i < d; ++i) expo2 *= k;
  const double log_exponent = expo * expo2 - 1.0;

  const double denom = static_cast<double>(X) *
                       std::pow(std::log(static_cast<double>(X)), log_exponent);
  return static_cast<double>(sum) / denom;
}

std::uint64_t smooth_count(std::uint64_t x, std::uint64_t y, const PrimeTable& table) {
  if (y < 1 || y > x) throw std::invalid_argument("smooth_count: need 1 <= y <= x");
  if (!table.covers(x)) throw std::invalid_argument("smooth_count: x outside table coverage");
  std::uint64_t count = 1;  // n = 1
  for (std::uint64_t n = 2; n <= x; ++n) {
    std::uint64_t m = n;
    bool smooth = true;
    while (m > 1) {
      const std::uint64_t p = table.spf[m];
      if (p > y) {
        smooth = false;
        break;
      }
      while (m % p == 0) m /= p;
    }
    if (smooth) ++count;
  }
  return count;
}

std::uint64_t prime_count(std::uint64_t x, const PrimeTable& table) {
  if (!table.covers(x)) throw std::invalid_argument("prime_count: x outside table coverage");
  const auto it = std::upper_bound(table.primes.begin(), table.primes.end(), x);
  return static_cast<std::uint64_t>(it - table.primes.begin());
}

} // namespace aplab
