#include "aplab/buchstab.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace aplab {

namespace {

// integral over the panel [u_{j-1}, u_j] from the cubic through the four
// surrounding grid values (interior rule; forward rule at the left edge)
double panel_integral(const std::vector<double>& v, std::size_t j, double h) {
  if (j >= 2 && j + 1 < v.size()) {
    return h * (-v[j - 2] + 13.0 * v[j - 1] + 13.0 * v[j] - v[j + 1]) / 24.0;
  }
  if (j + 2 < v.size()) {  // forward cubic: panel [x0, x1] from f0..f3
    return h * (9.0 * v[j - 1] + 19.0 * v[j] - 5.0 * v[j + 1] + v[j + 2]) / 24.0;
  }
  if (j >= 3) {  // backward cubic: panel [x2, x3] from f0..f3
    return h * (v[j - 3] - 5.0 * v[j - 2] + 19.0 * v[j - 1] + 9.0 * v[j]) / 24.0;
  }
  return h * 0.5 * (v[j - 1] + v[j]);  // trapezoid fallback for tiny tables
}

} // namespace

OmegaTable build_omega_table(double u_max, double step) {
  if (!(u_max >= 2.0 && u_max <= 100.0))
    throw std::invalid_argument("build_omega_table: u_max must lie in [2, 100]");
  if (!(step >= 1e-6 && step <= 1e-2))
    throw std::invalid_argument("build_omega_table: step must lie in [1e-6, 1e-2]");

  OmegaTable t;
  t.steps_per_unit = static_cast<int>(std::llround(1.0 / step));
  t.step = 1.0 / static_cast<double>(t.steps_per_unit);
  const auto m = static_cast<std::size_t>(t.steps_per_unit);
  const auto K = static_cast<std::size_t>(
      std::ceil((u_max - 1.0) * static_cast<double>(t.steps_per_unit) - 1e-9));
  t.u_max = t.grid_u(K);
  t.values.assign(K + 1, 0.0);
  t.cum.assign(K + 1, 0.0);

  // [1, 2]: omega = 1/u and its integral log(u), both exact
  const std::size_t top_exact = std::min(K, m);
  for (std::size_t k = 0; k <= top_exact; ++k) {
    const double u = t.grid_u(k);
    t.values[k] = 1.0 / u;
    t.cum[k] = std::log(u);
  }
  if (K <= m) return t;

  // Above 2 the delay recurrence reads off cum at lag one unit; cum itself
  // is extended one panel behind the freshly computed values (the interior
  // panel rule needs one point ahead).
  std::size_t cum_done = top_exact;  // cum[0..cum_done] valid
  for (std::size_t k = m + 1; k <= K; ++k) {
    const std::size_t lag = k - m;  // grid index of u_k - 1
    while (cum_done < lag) {
      const std::size_t j = cum_done + 1;
      t.cum[j] = t.cum[j - 1] + panel_integral(t.values, j, t.step);
      ++cum_done;
    }
    t.values[k] = (1.0 + t.cum[lag]) / t.grid_u(k);
  }
  while (cum_done < K) {
    const std::size_t j = cum_done + 1;
    t.cum[j] = t.cum[j - 1] + panel_integral(t.values, j, t.step);
    ++cum_done;
  }
  return t;
}

namespace {

// cubic Lagrange through grid points b..b+3 of `v`, evaluated at u
double cubic_at(const OmegaTable& t, const std::vector<double>& v, std::size_t b, double u) {
  const double x0 = t.grid_u(b), x1 = t.grid_u(b + 1), x2 = t.grid_u(b + 2),
               x3 = t.grid_u(b + 3);
  const double l0 = ((u - x1) * (u - x2) * (u - x3)) / ((x0 - x1) * (x0 - x2) * (x0 - x3));
  const double l1 = ((u - x0) * (u - x2) * (u - x3)) / ((x1 - x0) * (x1 - x2) * (x1 - x3));
  const double l2 = ((u - x0) * (u - x1) * (u - x3)) / ((x2 - x0) * (x2 - x1) * (x2 - x3));
  const double l3 = ((u - x0) * (u - x1) * (u - x2)) / ((x3 - x0) * (x3 - x1) * (x3 - x2));
  return v[b] * l0 + v[b + 1] * l1 + v[b + 2] * l2 + v[b + 3] * l3;
}

// window of 4 grid points around u, clamped so it never crosses the kink
// at u = 2 from the right nor runs off the table
std::size_t interp_base(const OmegaTable& t, double u) {
  const auto m = static_cast<std::size_t>(t.steps_per_unit);
  const double pos = (u - 1.0) * static_cast<double>(t.steps_per_unit);
  auto b = static_cast<long long>(std::floor(pos)) - 1;
  const long long lo = static_cast<long long>(m);
  const long long hi = static_cast<long long>(t.values.size()) - 4;
  if (b < lo) b = lo;
  if (b > hi) b = hi;
  return static_cast<std::size_t>(b);
}

} // namespace

double omega(double u, const OmegaTable& table) {
  if (u > table.u_max + 1e-12)
    throw std::domain_error("omega: u above table u_max");
  if (u < 1.0) return 0.0;   // no rough numbers below the first power of z
  if (u <= 2.0) return 1.0 / u;
  if (table.values.size() < 4) {  // linear fallback, only reachable for toy tables
    const auto k = static_cast<std::size_t>((u - 1.0) * table.steps_per_unit);
    const std::size_t k2 = std::min(k + 1, table.values.size() - 1);
    const double frac = (u - table.grid_u(k)) / table.step;
    return table.values[k] * (1.0 - frac) + table.values[k2] * frac;
  }
  return cubic_at(table, table.values, interp_base(table, u), std::min(u, table.u_max));
}

double omega_integral(double u, const OmegaTable& table) {
  if (u > table.u_max + 1e-12)
    throw std::domain_error("omega_integral: u above table u_max");
  if (u < 1.0) return 0.0;
  if (u <= 2.0) return std::log(u);
  if (table.cum.size() < 4) {
    const auto k = static_cast<std::size_t>((u - 1.0) * table.steps_per_unit);
    const std::size_t k2 = std::min(k + 1, table.cum.size() - 1);
    const double frac = (u - table.grid_u(k)) / table.step;
    return table.cum[k] * (1.0 - frac) + table.cum[k2] * frac;
  }
  return cubic_at(table, table.cum, interp_base(table, u), std::min(u, table.u_max));
}

double omega_oracle_23(double u) {
  if (!(u >= 2.0 && u <= 3.0))
    throw std::invalid_argument("omega_oracle_23: u must lie in [2, 3]");
  return (1.0 + std::log(u - 1.0)) / u;
}

} // namespace aplab
