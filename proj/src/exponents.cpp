#include "aplab/exponents.hpp"

#include <cctype>
#include <stdexcept>

namespace aplab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// the cpp_int string constructor reads a leading 0 as an octal prefix
std::string decimal_digits(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? "0" : std::string(s.substr(first));
}

BigRational parse_signed_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = (s[0] == '-');
    s.remove_prefix(1);
  }

  long long exp10 = 0;
  if (const auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view etail = s.substr(epos + 1);
    bool eneg = false;
    if (!etail.empty() && (etail[0] == '+' || etail[0] == '-')) {
      eneg = (etail[0] == '-');
      etail.remove_prefix(1);
    }
    if (!all_digits(etail)) throw std::invalid_argument("parse_rational: bad exponent");
    exp10 = std::stoll(std::string(etail));
    if (eneg) exp10 = -exp10;
    s = s.substr(0, epos);
  }

  std::string digits;
  long long frac_len = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("parse_rational: bare dot");
    if (!ip.empty() && !all_digits(ip)) throw std::invalid_argument("parse_rational: bad integer part");
    if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("parse_rational: bad fraction part");
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long long>(fp.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("parse_rational: not a number");
    digits = std::string(s);
  }
  if (digits.empty()) throw std::invalid_argument("parse_rational: empty number");

  BigInt num{decimal_digits(digits)};
  BigInt den = 1;
  long long shift = exp10 - frac_len;
  if (shift >= 0)
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
  else
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
  if (negative) num = -num;
  return BigRational(num, den);
}

} // namespace

BigRational parse_rational(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    bool nneg = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      nneg = (num[0] == '-');
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("parse_rational: malformed fraction");
    BigInt n{decimal_digits(num)};
    BigInt d{decimal_digits(den)};
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
    if (nneg) n = -n;
    return BigRational(n, d);
  }
  return parse_signed_decimal(s);
}

std::string to_fraction_string(const BigRational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

CgenResult cgen(const BigRational& theta, const BigRational& sigma, const BigRational& eps) {
  const BigRational denom = 1 - theta * (1 - 2 * sigma) - eps;
  if (denom <= 0)
    throw std::invalid_argument("cgen: 1 - theta(1 - 2 sigma) - eps must be positive");
  CgenResult r;
  r.c = 1 + 1 / denom;
  const BigRational lo = BigRational(1, 5) + 2 * eps;
  r.sigma_in_range = (sigma >= lo && sigma <= BigRational(1, 2));
  return r;
}

BigRational jutila_sigma_threshold(const BigRational& beta) {
  const BigRational denom = 14 - 40 * beta;
  if (denom == 0)
    throw std::invalid_argument("jutila_sigma_threshold: singular at beta = 7/20");
  return 7 * (1 - 2 * beta) / denom;
}

TypeIIResult typeII_feasible(const BigRational& sigma1, const BigRational& sigma2,
                             const BigRational& theta, const BigRational& a,
                             const BigRational& eps) {
  if (a <= 0 || eps <= 0)
    throw std::invalid_argument("typeII_feasible: a and eps must be positive");
  const BigRational sigma_floor = BigRational(49, 206) - 10 * eps;
  if (sigma1 < sigma_floor || sigma2 < sigma_floor)
    throw std::invalid_argument("typeII_feasible: sigma below 49/206 - 10 eps");
  if (theta < eps / 2 || theta > BigRational(2, 11))
    throw std::invalid_argument("typeII_feasible: theta outside [eps/2, 2/11]");

  TypeIIResult r;

  const BigRational denom = 1 - theta * (1 - 2 * sigma1) - eps;
  r.m2_route_holds = (denom > 0) && (a > 1 / denom);

  const BigRational lhs = (5 - 8 * sigma1) * theta + (1 - theta) * BigRational(49, 103);
  r.m1_fifth_power_route_holds = (lhs > 1 / a + 25 * eps);

  if (r.m2_route_holds) {
    r.feasible = true;
    r.branch = TypeIIBranch::m2_route;
  } else if (r.m1_fifth_power_route_holds) {
    r.feasible = true;
    r.branch = TypeIIBranch::m1_fifth_power_route;
  }
  return r;
}

bool typeI_II_constraints_ok(const BigRational& theta1, const BigRational& theta2,
                             const BigRational& eps) {
  return 2 * theta1 + theta2 <= 1 - eps && theta2 <= BigRational(1, 4) - eps;
}

std::vector<HeadlineCheck> headline_constants_check() {
  std::vector<HeadlineCheck> checks;

  {
    const BigRational lhs(103, 94), rhs(10999, 10000);
    checks.push_back({"type II exponent margin", "103/94 < 10999/10000",
                      lhs < rhs});
  }
  {
    const BigRational lhs(11, 32000), rhs(4, 10000);
    checks.push_back({"four-fold integral bound", "11/32000 < 4/10000", lhs < rhs});
  }
  {
    const BigRational got = jutila_sigma_threshold(BigRational(9, 11));
    checks.push_back({"large-values sigma threshold at beta = 9/11",
                      "sigma(9/11) = " + to_fraction_string(got) + " = 49/206",
                      got == BigRational(49, 206)});
  }
  {
    const BigRational got = cgen(BigRational(1, 3), BigRational(7, 32), 0).c;
    checks.push_back({"interval exponent at (theta, sigma) = (1/3, 7/32)",
                      "c = " + to_fraction_string(got) + " = 29/13",
                      got == BigRational(29, 13)});
  }
  {
    const BigRational got = 1 + BigRational(11, 10) / 2;
    checks.push_back({"all-intervals exponent 1 + a/2 at a = 11/10",
                      "1 + (11/10)/2 = " + to_fraction_string(got) + " = 31/20",
                      got == BigRational(31, 20)});
  }
  return checks;
}

} // namespace aplab
