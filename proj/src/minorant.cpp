#include "aplab/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aplab/parallel.hpp"
#include "aplab/segmented_sieve.hpp"

namespace aplab {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// smallest integer >= 2 sqrt(X), exactly
std::uint64_t ceil_two_sqrt(std::uint64_t X) {
  const std::uint64_t t = isqrt_u64(4 * X);
  return (t * t == 4 * X) ? t : t + 1;
}

} // namespace

MinorantParams MinorantParams::make(std::uint64_t X, double eps, double c, double a,
                                    bool relaxed_a) {
  if (X < 100) throw std::invalid_argument("MinorantParams: X must be >= 100");
  if (!(eps >= 0.0 && eps < 0.125))
    throw std::invalid_argument("MinorantParams: eps must lie in [0, 1/8)");
  if (!relaxed_a && !(a >= c - 1.0 - 1.0 / 10000.0 - 1e-12 && a <= c - 1.0 + 1e-12))
    throw std::invalid_argument(
        "MinorantParams: a must lie in [c - 1 - 1/10000, c - 1] (pass relaxed_a to override)");

  MinorantParams p;
  p.X = X;
  p.eps = eps;
  p.c = c;
  p.a = a;
  p.relaxed_a = relaxed_a;
  const double logX = std::log(static_cast<double>(X));
  p.z = std::pow(static_cast<double>(X), 2.0 / 11.0);
  p.P1 = std::pow(logX, a);
  p.h = std::pow(logX, c);
  p.h1 = std::pow(static_cast<double>(X), 0.99);
  p.two_sqrtX = 2.0 * std::sqrt(static_cast<double>(X));
  p.q_cap = std::pow(static_cast<double>(X), 0.25 - 2.0 * eps);
  p.pair_cap = std::pow(static_cast<double>(X), 1.0 - 2.0 * eps);
  p.n_lo = ceil_two_sqrt(X);
  p.n_hi = 3 * X;
  return p;
}

int rho_rough(std::uint64_t n, double z, const PrimeTable& table) {
  if (!table.covers(n)) throw std::invalid_argument("rho_rough: n outside table coverage");
  if (z < 2.0) throw std::invalid_argument("rho_rough: z must be >= 2");
  if (n == 1) return 1;
  return static_cast<double>(table.spf[n]) >= z ? 1 : 0;
}

int buchstab_identity_residual(std::uint64_t n, double w, double z, const PrimeTable& table) {
  if (!(2.0 <= w && w <= z))
    throw std::invalid_argument("buchstab_identity_residual: need 2 <= w <= z");
  if (!table.covers(n))
    throw std::invalid_argument("buchstab_identity_residual: n outside table coverage");

  int residual = rho_rough(n, z, table) - rho_rough(n, w, table);
  // + sum over distinct primes q | n, w <= q < z, of rho(n/q, q)
  std::uint64_t rest = n;
  while (rest > 1) {
    const std::uint64_t q = table.spf[rest];
    while (rest % q == 0) rest /= q;
    const double qd = static_cast<double>(q);
    if (qd >= w && qd < z) residual += rho_rough(n / q, qd, table);
  }
  return residual;
}

namespace {

// distinct prime divisors of n, ascending, assuming spf(n) >= z already checked
int collect_distinct_primes(std::uint64_t n, const PrimeTable& table, std::uint64_t out[8]) {
  int r = 0;
  while (n > 1) {
    const std::uint64_t q = table.spf[n];
    while (n % q == 0) n /= q;
    out[r++] = q;
  }
  return r;
}

// rho^- for n already known to be z-rough; q[] ascending distinct primes
int rho_minus_rough(const std::uint64_t q[], int r, const MinorantParams& P) {
  // every cofactor of a z-rough n is z-rough, so each surviving tuple adds 1
  int value = 1;
  for (int i = 0; i < r; ++i)
    if (static_cast<double>(q[i]) < P.two_sqrtX) --value;
  for (int i = 1; i < r; ++i) {        // q1 = q[i]
    if (!(static_cast<double>(q[i]) < P.q_cap)) continue;
    for (int j = 0; j < i; ++j) {      // q2 = q[j] < q1
      const double q2_4 = static_cast<double>(q[j]) * q[j] * q[j] * q[j];
      if (!(static_cast<double>(q[i]) * q2_4 < P.pair_cap)) continue;
      ++value;                          // pair term
      value -= j;                       // triple term: any q3 = q[k], k < j
    }
  }
  return value;
}

} // namespace

int rho_minus(std::uint64_t n, const MinorantParams& params, const PrimeTable& table) {
  if (n < params.n_lo || n > params.n_hi)
    throw std::invalid_argument("rho_minus: n outside [2 sqrt X, 3X]");
  if (!table.covers(n)) throw std::invalid_argument("rho_minus: n outside table coverage");
  if (static_cast<double>(table.spf[n]) < params.z) return 0;  // every term vanishes
  std::uint64_t q[8];
  const int r = collect_distinct_primes(n, table, q);
  return rho_minus_rough(q, r, params);
}

MinorantScanReport minorant_scan(const MinorantParams& params, const PrimeTable& table) {
  if (params.n_hi > table.limit)
    throw std::invalid_argument("minorant_scan: table must cover 3X");

  const double bound_factor =
      4.0 * std::pow(std::log(3.0 * static_cast<double>(params.X)) / std::log(params.z), 3.0);

  struct Partial {
    std::uint64_t scanned = 0, upper = 0, bound = 0, primes = 0, primes_one = 0;
    std::map<int, std::uint64_t> hist;
  };

  const std::uint64_t lo = params.n_lo;
  const std::uint64_t count = params.n_hi - lo + 1;
  Partial total = parallel_chunked<Partial>(
      count, 1 << 16,
      [&](std::size_t beg, std::size_t end) {
        Partial part;
        std::uint64_t q[8];
        for (std::uint64_t off = beg; off < end; ++off) {
          const std::uint64_t n = lo + off;
          ++part.scanned;
          int value = 0;
          int rough = 0;
          if (static_cast<double>(table.spf[n]) >= params.z) {
            rough = 1;
            const int r = collect_distinct_primes(n, table, q);
            value = rho_minus_rough(q, r, params);
          }
          ++part.hist[value];
          const bool is_prime = table.spf[n] == n;
          if (is_prime) {
            ++part.primes;
            if (value == 1) ++part.primes_one;
          }
          if (value > (is_prime ? 1 : 0)) ++part.upper;
          if (std::abs(value) > bound_factor * rough) ++part.bound;
        }
        return part;
      },
      [](Partial acc, const Partial& p) {
        acc.scanned += p.scanned;
        acc.upper += p.upper;
        acc.bound += p.bound;
        acc.primes += p.primes;
        acc.primes_one += p.primes_one;
        for (const auto& [k, v] : p.hist) acc.hist[k] += v;
        return acc;
      },
      Partial{});

  MinorantScanReport rep;
  rep.n_scanned = total.scanned;
  rep.upper_violations = total.upper;
  rep.bound_violations = total.bound;
  rep.primes_in_range = total.primes;
  rep.primes_with_value_one = total.primes_one;
  rep.bound_factor = bound_factor;
  rep.histogram = std::move(total.hist);
  return rep;
}

WindowSums::WindowSums(const MinorantParams& params, const PrimeTable& table)
    : params_(params) {
  if (params.n_hi > table.limit)
    throw std::invalid_argument("WindowSums: table must cover 3X");

  for (std::uint32_t p : table.primes) {
    if (static_cast<double>(p) > 2.0 * params.P1) break;
    if (static_cast<double>(p) > params.P1) window_primes_.push_back(p);
  }

  std::vector<std::int32_t> weight(params.n_hi + 1, 0);
  for (std::uint32_t p : window_primes_) {
    const std::uint64_t n_top = params.n_hi / p;
    if (n_top < params.n_lo) continue;
    const std::uint64_t span = n_top - params.n_lo + 1;
    parallel_for_chunks(span, 1 << 15, [&](std::size_t beg, std::size_t end) {
      std::uint64_t q[8];
      for (std::uint64_t off = beg; off < end; ++off) {
        const std::uint64_t n = params.n_lo + off;
        if (static_cast<double>(table.spf[n]) < params.z) continue;
        const int r = collect_distinct_primes(n, table, q);
        const int v = rho_minus_rough(q, r, params);
        if (v != 0) weight[p * n] += v;
      }
    });
  }

  prefix_.assign(params.n_hi + 1, 0);
  std::int64_t running = 0;
  for (std::uint64_t m = 0; m <= params.n_hi; ++m) {
    running += weight[m];
    prefix_[m] = running;
  }
}

std::int64_t WindowSums::window_sum(double x, double hwin) const {
  if (!(x > 0) || hwin < 0)
    throw std::invalid_argument("window_sum: need x > 0 and hwin >= 0");
  const double top = x + hwin;
  if (top > static_cast<double>(params_.n_hi))
    throw std::invalid_argument("window_sum: window extends past 3X coverage");
  const auto lo = static_cast<std::uint64_t>(std::floor(x));
  const auto hi = static_cast<std::uint64_t>(std::floor(top));
  return prefix_[hi] - prefix_[lo];
}

double WindowSums::reference_lower_bound() const {
  const double logX = std::log(static_cast<double>(params_.X));
  return params_.h1 / (200.0 * std::log(params_.P1) * logX);
}

std::int64_t weighted_window_sum(double x, double hwin, const MinorantParams& params,
                                 const PrimeTable& table) {
  return WindowSums(params, table).window_sum(x, hwin);
}

VarianceReport variance_experiment(const MinorantParams& params, const PrimeTable& table,
                                   std::uint64_t sample) {
  if (sample < 100) throw std::invalid_argument("variance_experiment: sample must be >= 100");
  const WindowSums sums(params, table);

  const double X = static_cast<double>(params.X);
  double sum = 0, sum_sq = 0;
  for (std::uint64_t i = 1; i <= sample; ++i) {
    const double x = X + static_cast<double>(i) * X / static_cast<double>(sample);
    const double d = static_cast<double>(sums.window_sum(x, params.h)) / params.h -
                     static_cast<double>(sums.window_sum(x, params.h1)) / params.h1;
    sum += d * d;
    sum_sq += d * d * d * d;
  }
  const double n = static_cast<double>(sample);
  VarianceReport rep;
  rep.sample = sample;
  rep.mean_square = sum / n;
  const double log_sq = std::pow(std::log(X), 2.0);
  rep.ratio = rep.mean_square * log_sq;
  const double var_of_sq = std::max(0.0, sum_sq / n - rep.mean_square * rep.mean_square);
  rep.ci_half_width = 1.96 * std::sqrt(var_of_sq / n) * log_sq;
  return rep;
}

IntervalReport count_E2_intervals(std::uint64_t X, const MinorantParams& params,
                                  const PrimeTable& table, std::uint64_t sample) {
  if (sample < 1) throw std::invalid_argument("count_E2_intervals: sample must be >= 1");

  std::vector<std::uint32_t> window_primes;
  for (std::uint32_t p : table.primes) {
    if (static_cast<double>(p) > 2.0 * params.P1) break;
    if (static_cast<double>(p) > params.P1) window_primes.push_back(p);
  }
  if (window_primes.empty())
    throw std::invalid_argument("count_E2_intervals: no primes in (P1, 2P1]");

  const double h_max = std::pow(std::log(2.0 * static_cast<double>(X)), params.c);
  const std::uint64_t n_needed = static_cast<std::uint64_t>(
      (2.0 * static_cast<double>(X) + h_max) / static_cast<double>(window_primes.front())) + 1;
  if (n_needed > table.limit)
    throw std::invalid_argument("count_E2_intervals: table must cover (2X + h)/p1_min = " +
                                std::to_string(n_needed));

  IntervalReport rep;
  rep.x_grid.resize(sample);
  rep.counts.resize(sample);
  rep.predicted_per_x.resize(sample);

  parallel_for_chunks(sample, 256, [&](std::size_t beg, std::size_t end) {
    for (std::size_t i = beg; i < end; ++i) {
      const double x =
          (sample == 1) ? static_cast<double>(X)
                        : static_cast<double>(X) *
                              (1.0 + static_cast<double>(i) / static_cast<double>(sample - 1));
      const double h_x = std::pow(std::log(x), params.c);
      std::uint32_t count = 0;
      double predicted = 0;
      for (std::uint32_t p : window_primes) {
        const auto n_from = static_cast<std::uint64_t>(std::floor(x / p)) + 1;
        const auto n_to = static_cast<std::uint64_t>(std::floor((x + h_x) / p));
        for (std::uint64_t n = n_from; n <= n_to; ++n)
          if (table.spf[n] == n) ++count;
        predicted += h_x / (static_cast<double>(p) * std::log(x / p));
      }
      rep.x_grid[i] = x;
      rep.counts[i] = count;
      rep.predicted_per_x[i] = predicted;
    }
  });

  double pred_sum = 0, count_sum = 0;
  for (std::size_t i = 0; i < sample; ++i) {
    pred_sum += rep.predicted_per_x[i];
    count_sum += rep.counts[i];
    if (rep.counts[i] == 0) ++rep.failures;
  }
  rep.predicted = pred_sum / static_cast<double>(sample);
  rep.mean_count = count_sum / static_cast<double>(sample);
  return rep;
}

IntervalReport count_E3_all_intervals(std::uint64_t x_lo, std::uint64_t x_hi,
                                      std::uint64_t grid, double exponent) {
  if (x_lo < 10 || x_hi < x_lo)
    throw std::invalid_argument("count_E3_all_intervals: need 10 <= x_lo <= x_hi");
  if (grid < 1) throw std::invalid_argument("count_E3_all_intervals: grid must be >= 1");

  const double max_len = std::sqrt(static_cast<double>(x_hi)) *
                         std::pow(std::log(static_cast<double>(x_hi)), std::max(exponent, 0.0));
  const SegmentSiever siever(x_hi + static_cast<std::uint64_t>(max_len) + 64);

  IntervalReport rep;
  rep.x_grid.resize(grid);
  rep.counts.resize(grid);
  rep.predicted_per_x.assign(grid, 0.0);

  const double ratio = static_cast<double>(x_hi) / static_cast<double>(x_lo);

  parallel_for_chunks(grid, 8, [&](std::size_t beg, std::size_t end) {
    for (std::size_t g = beg; g < end; ++g) {
      const double frac =
          (grid == 1) ? 0.0 : static_cast<double>(g) / static_cast<double>(grid - 1);
      const auto x = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(x_lo) * std::pow(ratio, frac)));
      const double len = std::sqrt(static_cast<double>(x)) *
                         std::pow(std::log(static_cast<double>(x)), exponent);
      const auto top = static_cast<std::uint64_t>(
          std::floor(static_cast<double>(x) + std::max(len, 0.0)));

      std::uint32_t found = 0;
      constexpr std::uint64_t kBlock = 1 << 14;
      for (std::uint64_t lo = x + 1; lo <= top && !found; lo += kBlock) {
        const std::uint64_t hi = std::min(top, lo + kBlock - 1);
        const OmegaSegment seg = siever.omega_segment(lo, hi);
        for (std::uint64_t n = lo; n <= hi; ++n)
          if (seg.omega_at(n) == 3) {
            found = 1;
            break;
          }
      }
      rep.x_grid[g] = static_cast<double>(x);
      rep.counts[g] = found;
    }
  });

  double count_sum = 0;
  for (std::size_t g = 0; g < grid; ++g) {
    count_sum += rep.counts[g];
    if (rep.counts[g] == 0) ++rep.failures;
  }
  rep.mean_count = count_sum / static_cast<double>(grid);
  return rep;
}

} // namespace aplab
