#pragma once

#include <stdexcept>
#include <string>

namespace aplab {

// Thrown when a requested computation would exceed a configured memory or
// work budget (as opposed to a malformed argument).
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by adaptive quadrature when the tolerance could not be met within
// the cell budget.  Carries the best value and its error estimate so callers
// can still inspect the partial result.
class convergence_failure : public std::runtime_error {
public:
  convergence_failure(const std::string& what, double best_value, double error_estimate)
      : std::runtime_error(what), best_value(best_value), error_estimate(error_estimate) {}
  double best_value;
  double error_estimate;
};

class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace aplab
