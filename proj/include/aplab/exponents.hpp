#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace aplab {

// Exact rational arithmetic for exponent bookkeeping.  Backed by
// boost::multiprecision (always canonical: reduced, positive denominator);
// floating point never enters any computation in this module.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Parses "p/q", plain integers, and exact decimal strings ("0.23", "-1.5e-3").
// Anything else -> std::invalid_argument.
BigRational parse_rational(std::string_view s);

std::string to_fraction_string(const BigRational& r);

inline BigRational rational_pow(const BigRational& base, unsigned k) {
  BigRational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

struct CgenResult {
  BigRational c;
  bool sigma_in_range;  // warning flag: sigma outside [1/5 + 2 eps, 1/2]
};

// Interval exponent supported by a type II estimate with parameters
// (theta, sigma):  c = 1 + 1/(1 - theta (1 - 2 sigma) - eps).
// Nonpositive denominator -> std::invalid_argument.
CgenResult cgen(const BigRational& theta, const BigRational& sigma, const BigRational& eps);

// The sigma at which the middle term of the three-term large-values bound
// (power moment k = 7, polynomial length N = T^beta) matches T^{2 sigma}:
// solves 1 + beta((40/7) sigma - 2) = 2 sigma, i.e. sigma = 7(1-2beta)/(14-40beta).
// beta = 7/20 -> std::invalid_argument (singular).
BigRational jutila_sigma_threshold(const BigRational& beta);

enum class TypeIIBranch {
  none,
  m2_route,            // sparse mean value applied to the second polynomial
  m1_fifth_power_route // fifth power of the first polynomial in its place
};

struct TypeIIResult {
  bool feasible = false;
  TypeIIBranch branch = TypeIIBranch::none;
  bool m2_route_holds = false;
  bool m1_fifth_power_route_holds = false;
};

// Feasibility of the type II exponent chain at a given working point.
//
// Route 1 requires       a > 1/(1 - theta (1 - 2 sigma1) - eps)
// Route 2 requires       (5 - 8 sigma1) theta + (1 - theta) * 2 * (49/206)
//                          > 1/a + 25 eps
// (route 2 uses the worst admissible sigma2 = 49/206 - 10 eps, which is how
// the chain is closed; sigma2 enters only through its precondition).
//
// Preconditions: sigma1, sigma2 >= 49/206 - 10 eps; theta in [eps/2, 2/11];
// a, eps > 0.  Violations -> std::invalid_argument.
TypeIIResult typeII_feasible(const BigRational& sigma1, const BigRational& sigma2,
                             const BigRational& theta, const BigRational& a,
                             const BigRational& eps);

// Exploratory predicate for the type I/II constraint set with
// M1 = X^theta1, M2 = X^theta2:  2 theta1 + theta2 <= 1 - eps  and
// theta2 <= 1/4 - eps.  Exposed without a pass/fail target.
bool typeI_II_constraints_ok(const BigRational& theta1, const BigRational& theta2,
                             const BigRational& eps);

struct HeadlineCheck {
  std::string name;
  std::string detail;  // exact fractions involved
  bool pass = false;
};

// The five headline identities/inequalities, all in exact arithmetic:
//   (1) 103/94 < 10999/10000
//   (2) 11/32000 < 4/10000
//   (3) jutila_sigma_threshold(9/11) = 49/206
//   (4) cgen(1/3, 7/32, 0) = 29/13
//   (5) 1 + (11/10)/2 = 31/20
std::vector<HeadlineCheck> headline_constants_check();

} // namespace aplab
