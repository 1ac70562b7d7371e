#pragma once

#include <cstdint>
#include <vector>

namespace aplab {

// Buchstab's function, defined by omega(u) = 1/u on [1, 2] and extended by
// (u omega(u))' = omega(u - 1).  The table stores omega and its running
// integral on a uniform grid over [1, u_max]; construction integrates the
// Volterra form
//
//     u omega(u) = 1 + integral_1^{u-1} omega(t) dt
//
// panel by panel, which sidesteps differentiating across the kink at u = 2.
// Immutable after build; evaluation is pure and thread-safe.
struct OmegaTable {
  double u_max = 0;
  double step = 0;                // effective grid spacing, 1/steps_per_unit
  int steps_per_unit = 0;         // chosen so that u - 1 lands exactly on the grid
  std::vector<double> values;     // omega at u_k = 1 + k*step
  std::vector<double> cum;        // integral_1^{u_k} omega(t) dt

  double grid_u(std::size_t k) const { return 1.0 + static_cast<double>(k) * step; }
};

// u_max in [2, 100], step in [1e-6, 1e-2]; the step is snapped to 1/round(1/step).
OmegaTable build_omega_table(double u_max = 20.0, double step = 1e-4);

// omega(u): exact 1/u on [1, 2], local cubic interpolation above, 0 below 1.
// u > u_max -> std::domain_error.
double omega(double u, const OmegaTable& table);

// integral_1^u omega(t) dt for u in [1, u_max] (0 below 1), interpolated off-grid.
double omega_integral(double u, const OmegaTable& table);

// Analytic solution (1 + ln(u-1))/u, valid on [2, 3]; the independent oracle
// for the numeric table.  Outside [2, 3] -> std::invalid_argument.
double omega_oracle_23(double u);

// asymptotic limit of omega(u): e^{-gamma}
inline constexpr double kOmegaLimit = 0.5614594835668852;

} // namespace aplab
