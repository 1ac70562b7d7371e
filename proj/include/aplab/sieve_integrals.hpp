#pragma once

#include <cstdint>

#include "aplab/buchstab.hpp"
#include "aplab/exponents.hpp"

namespace aplab {

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;   // refinement/variance based bound, >= 0
  std::uint64_t cells = 0;     // leaf panels (I2) or strata (I4)
  double boundary_measure = 0; // measure of cells straddling an indicator jump
};

// I2(eps): double integral over 2/11 <= alpha2 <= alpha1, alpha1 in [2/11, 1/2]
// of 1_{alpha1 >= 1/4 - 2 eps or alpha1 + 4 alpha2 >= 1 - 2 eps}
//   * omega((1 - alpha1 - alpha2)/alpha2) / (alpha1 alpha2^2).
//
// The indicator switches along straight lines, so the domain is split there
// exactly and each piece is handled by iterated adaptive Gauss-Kronrod with
// the omega kink lines (argument = 1, 2, 3) as further explicit breakpoints.
//
// Preconditions: 0 <= eps <= 1e-2, tol in [1e-6, 1e-2].  Failure to reach
// tol within the panel budget throws convergence_failure with the best value.
QuadratureResult integral_I2(double eps, double tol, const OmegaTable& omega);

// I4(eps): the four-fold analogue over 2/11 <= a4 < a3 < a2 < a1 < 1/4 - 2 eps
// with indicator alpha1 + 4 alpha2 <= 1 - 2 eps and integrand
// omega((1 - a1 - a2 - a3 - a4)/a4) / (a1 a2 a3 a4^2).
//
// Stratified Monte Carlo over the bounding box (the integrand vanishes for
// alpha2 > 1/5): fixed substream RNG per stratum, variance-based error
// estimate (3 sigma), deterministic for any thread count.  `points` = 0
// derives the sample budget from tol.
QuadratureResult integral_I4_direct(double eps, double tol, const OmegaTable& omega,
                                    std::uint64_t points = 0,
                                    std::uint64_t seed = 0x41f4b4d1u);

// Exact analytic majorant of I4: (11/2)^5 (1/4 - 2/11) (1/5 - 2/11)^3 / 3!
// = 11/32000.
BigRational integral_I4_bound();

struct MarginResult {
  double margin = 0;           // 1 - I2(eps) - I4(eps)
  double error_estimate = 0;   // combined
  QuadratureResult i2;
  QuadratureResult i4;
};

// 1 - I2 - I4 with propagated error estimates.  At eps = 0 the result is
// checked against the certified floor 0.0096 - combined error; a violation
// throws std::runtime_error.
MarginResult density_margin(double eps, double tol, const OmegaTable& omega);

// Measure of the part of the I2 indicator region where the omega argument
// drops below 1 (where the adopted convention omega = 0 applies).  Reported
// alongside I2 so the sensitivity of the convention stays visible.
double i2_zero_omega_region_measure(double eps, double tol);

} // namespace aplab
