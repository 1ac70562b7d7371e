#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace aplab {

struct PanelEstimate {
  double value = 0;
  double error = 0;
};

// 15-point Kronrod estimate with the embedded 7-point Gauss rule as the
// error reference.
PanelEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

struct AdaptiveResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t panels = 0;
  bool converged = false;
};

// Adaptive bisection on [a, b], pre-split at the given interior breakpoints
// (known discontinuities or kinks of f).  Deterministic: refinement order
// and the final left-to-right compensated summation do not depend on thread
// count or platform scheduling.  Does not throw on budget exhaustion; the
// caller decides what a non-converged result means.
AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints, double abs_tol,
                                  std::size_t max_panels = 4096);

} // namespace aplab
