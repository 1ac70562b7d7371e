#include "aplab/sieve_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "aplab/errors.hpp"
#include "aplab/parallel.hpp"
#include "aplab/quadrature.hpp"
#include "aplab/rng.hpp"

namespace aplab {

namespace {

constexpr double kAlphaMin = 2.0 / 11.0;

void check_i2_args(double eps, double tol) {
  if (!(eps >= 0.0 && eps <= 1e-2))
    throw std::invalid_argument("integral: eps must lie in [0, 1e-2]");
  if (!(tol >= 1e-6 && tol <= 1e-2))
    throw std::invalid_argument("integral: tol must lie in [1e-6, 1e-2]");
}

// alpha2 values at which the inner integrand changes smoothness class for a
// fixed alpha1: the omega argument hits 1 (jump), 2, 3 (derivative kinks).
void inner_breakpoints(double alpha1, std::vector<double>& bp) {
  bp.clear();
  for (int u = 1; u <= 3; ++u) bp.push_back((1.0 - alpha1) / (u + 1));
}

// Inner integral over alpha2 in [lo, hi] of omega((1-a1-a2)/a2) / (a1 a2^2).
AdaptiveResult inner_integral(double alpha1, double lo, double hi, const OmegaTable& table,
                              double tol, std::size_t* panel_count) {
  if (!(hi > lo)) return {};
  std::vector<double> bp;
  inner_breakpoints(alpha1, bp);
  auto f = [alpha1, &table](double alpha2) {
    const double u = (1.0 - alpha1 - alpha2) / alpha2;
    if (u < 1.0) return 0.0;
    return omega(u, table) / (alpha1 * alpha2 * alpha2);
  };
  AdaptiveResult r = adaptive_integrate(f, lo, hi, bp, tol, 512);
  if (panel_count) *panel_count += r.panels;
  return r;
}

struct PieceResult {
  double value = 0;
  double error = 0;
  std::size_t cells = 0;
};

} // namespace

QuadratureResult integral_I2(double eps, double tol, const OmegaTable& table) {
  check_i2_args(eps, tol);
  if (table.u_max < 3.5 - 1e-9)
    throw std::invalid_argument("integral_I2: omega table must cover u <= 3.5");

  const double a_lo = kAlphaMin, a_hi = 0.5;
  const double t1 = 0.25 - 2.0 * eps;            // full indicator for alpha1 >= t1
  const double s0 = (1.0 - 2.0 * eps) / 5.0;     // below this the restricted range is empty
  const double inner_tol = tol / 50.0;

  // alpha1 values where the inner integration limits or the active kink set
  // change: indicator switch, range-empty threshold, and the crossings of
  // the omega kink lines with the range ends.
  std::vector<double> outer_bp = {s0, t1, 0.2, 0.25, 3.0 / 11.0, 1.0 / 3.0, 5.0 / 11.0};

  std::vector<double> cuts;
  cuts.push_back(a_lo);
  for (double x : outer_bp)
    if (x > a_lo + 1e-14 && x < a_hi - 1e-14) cuts.push_back(x);
  cuts.push_back(a_hi);
  std::sort(cuts.begin(), cuts.end());

  const double width = a_hi - a_lo;
  const double outer_tol = 0.8 * tol;

  const std::size_t n_pieces = cuts.size() - 1;
  std::vector<PieceResult> pieces(n_pieces);

  parallel_for_chunks(n_pieces, 1, [&](std::size_t lo_idx, std::size_t hi_idx) {
    for (std::size_t i = lo_idx; i < hi_idx; ++i) {
      const double pa = cuts[i], pb = cuts[i + 1];
      PieceResult piece;
      std::size_t inner_panels = 0;
      double inner_err_worst = 0.0;  // actual worst inner error, not the budget
      auto g = [&](double alpha1) {
        double lo2 = a_lo, hi2 = alpha1;
        if (alpha1 < t1) {
          lo2 = std::max(lo2, (1.0 - 2.0 * eps - alpha1) / 4.0);
          if (lo2 >= hi2) return 0.0;
        }
        const AdaptiveResult inner =
            inner_integral(alpha1, lo2, hi2, table, inner_tol, &inner_panels);
        inner_err_worst = std::max(inner_err_worst, inner.error_estimate);
        return inner.value;
      };
      AdaptiveResult r =
          adaptive_integrate(g, pa, pb, {}, outer_tol * (pb - pa) / width, 2048);
      piece.value = r.value;
      piece.error = r.error_estimate + (pb - pa) * std::max(inner_tol, inner_err_worst);
      piece.cells = r.panels + inner_panels;
      pieces[i] = piece;
    }
  });

  QuadratureResult out;
  double comp = 0;
  for (const PieceResult& p : pieces) {
    const double y = p.value - comp;
    const double t = out.value + y;
    comp = (t - out.value) - y;
    out.value = t;
    out.error_estimate += p.error;
    out.cells += p.cells;
  }
  out.boundary_measure = 0.0;  // indicator lines are split exactly
  if (out.error_estimate > tol)
    throw convergence_failure("integral_I2: tolerance not reached within panel budget",
                              out.value, out.error_estimate);
  return out;
}

QuadratureResult integral_I4_direct(double eps, double tol, const OmegaTable& table,
                                    std::uint64_t points, std::uint64_t seed) {
  check_i2_args(eps, tol);
  if (table.u_max < 1.6)
    throw std::invalid_argument("integral_I4_direct: omega table must cover u <= 1.6");

  if (points == 0) {
    const double scaled = 1e7 * (1e-5 / tol) * (1e-5 / tol);
    points = static_cast<std::uint64_t>(std::clamp(scaled, 1e6, 2e8));
  }
  if (points > 2'000'000'000ULL)
    throw resource_limit_error("integral_I4_direct: sample budget above 2e9");

  const double a1_lo = kAlphaMin, a1_hi = 0.25 - 2.0 * eps;
  const double a_lo = kAlphaMin, a_hi = 0.2;  // integrand vanishes for alpha2 > 1/5
  if (a1_hi <= a1_lo) return {};

  // stratum grid: denser along alpha1 (the wide axis)
  std::uint64_t scale = 1;
  while (scale < 4 &&
         (12 * (scale + 1)) * (8 * (scale + 1)) * (8 * (scale + 1)) *
                 (8 * (scale + 1)) * 256 <=
             points)
    ++scale;
  const std::uint64_t n1 = 12 * scale, n2 = 8 * scale, n3 = 8 * scale, n4 = 8 * scale;
  const std::uint64_t n_strata = n1 * n2 * n3 * n4;
  const std::uint64_t per_stratum = std::max<std::uint64_t>(16, points / n_strata);

  const double w1 = (a1_hi - a1_lo) / static_cast<double>(n1);
  const double w2 = (a_hi - a_lo) / static_cast<double>(n2);
  const double w3 = (a_hi - a_lo) / static_cast<double>(n3);
  const double w4 = (a_hi - a_lo) / static_cast<double>(n4);
  const double stratum_vol = w1 * w2 * w3 * w4;
  const double cap = 1.0 - 2.0 * eps;

  struct Stratum {
    double mean = 0, m2 = 0;  // Welford accumulators
    bool saw_zero = false, saw_pos = false;
  };
  std::vector<Stratum> strata(n_strata);

  parallel_for_chunks(n_strata, 64, [&](std::size_t lo_idx, std::size_t hi_idx) {
    for (std::size_t s = lo_idx; s < hi_idx; ++s) {
      std::uint64_t rem = s;
      const std::uint64_t i4 = rem % n4; rem /= n4;
      const std::uint64_t i3 = rem % n3; rem /= n3;
      const std::uint64_t i2 = rem % n2; rem /= n2;
      const std::uint64_t i1 = rem;
      const double b1 = a1_lo + w1 * static_cast<double>(i1);
      const double b2 = a_lo + w2 * static_cast<double>(i2);
      const double b3 = a_lo + w3 * static_cast<double>(i3);
      const double b4 = a_lo + w4 * static_cast<double>(i4);

      SplitMix64 rng = substream(seed, s);
      Stratum st;
      for (std::uint64_t j = 0; j < per_stratum; ++j) {
        const double alpha1 = b1 + w1 * rng.next_double();
        const double alpha2 = b2 + w2 * rng.next_double();
        const double alpha3 = b3 + w3 * rng.next_double();
        const double alpha4 = b4 + w4 * rng.next_double();
        double f = 0.0;
        if (alpha4 < alpha3 && alpha3 < alpha2 && alpha2 < alpha1 &&
            alpha1 + 4.0 * alpha2 <= cap) {
          const double u = (1.0 - alpha1 - alpha2 - alpha3 - alpha4) / alpha4;
          if (u >= 1.0)
            f = omega(u, table) / (alpha1 * alpha2 * alpha3 * alpha4 * alpha4);
        }
        if (f == 0.0) st.saw_zero = true; else st.saw_pos = true;
        const double count = static_cast<double>(j + 1);
        const double delta = f - st.mean;
        st.mean += delta / count;
        st.m2 += delta * (f - st.mean);
      }
      strata[s] = st;
    }
  });

  QuadratureResult out;
  out.cells = n_strata;
  double comp = 0, var_sum = 0;
  const double n_samples = static_cast<double>(per_stratum);
  for (const Stratum& st : strata) {
    const double y = st.mean * stratum_vol - comp;
    const double t = out.value + y;
    comp = (t - out.value) - y;
    out.value = t;
    const double var = (per_stratum > 1) ? st.m2 / (n_samples - 1.0) : 0.0;
    var_sum += stratum_vol * stratum_vol * var / n_samples;
    if (st.saw_zero && st.saw_pos) out.boundary_measure += stratum_vol;
  }
  out.error_estimate = 3.0 * std::sqrt(var_sum);
  if (out.error_estimate > tol)
    throw convergence_failure("integral_I4_direct: tolerance not reached at sample budget",
                              out.value, out.error_estimate);
  return out;
}

BigRational integral_I4_bound() {
  const BigRational scale = rational_pow(BigRational(11, 2), 5);
  const BigRational a1_width = BigRational(1, 4) - BigRational(2, 11);
  const BigRational a2_width = BigRational(1, 5) - BigRational(2, 11);
  return scale * a1_width * rational_pow(a2_width, 3) / 6;
}

MarginResult density_margin(double eps, double tol, const OmegaTable& table) {
  MarginResult r;
  r.i2 = integral_I2(eps, tol, table);
  r.i4 = integral_I4_direct(eps, std::max(tol / 10.0, 1e-6), table);
  r.margin = 1.0 - r.i2.value - r.i4.value;
  r.error_estimate = r.i2.error_estimate + r.i4.error_estimate;
  if (eps == 0.0 && r.margin < 0.0096 - r.error_estimate)
    throw std::runtime_error("density_margin: margin fell below the certified floor 0.0096");
  return r;
}

double i2_zero_omega_region_measure(double eps, double tol) {
  check_i2_args(eps, tol);
  const double t1 = 0.25 - 2.0 * eps;
  // Inside the restricted branch (alpha1 < t1) the lower limit sits far above
  // the omega-argument-below-1 line, so only the full branch contributes.
  auto len = [&](double alpha1) {
    if (alpha1 < t1) return 0.0;
    const double lo = std::max(kAlphaMin, 0.5 * (1.0 - alpha1));
    return std::max(0.0, alpha1 - lo);
  };
  const std::vector<double> bp = {t1, 1.0 / 3.0, 7.0 / 11.0};
  AdaptiveResult r = adaptive_integrate(len, kAlphaMin, 0.5, bp, tol, 1024);
  return r.value;
}

} // namespace aplab
