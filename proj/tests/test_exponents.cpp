#include <doctest.h>

#include <stdexcept>

#include "aplab/exponents.hpp"
#include "aplab/rng.hpp"

using namespace aplab;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("49/206") == BigRational(49, 206));
  CHECK(parse_rational("-3/6") == BigRational(-1, 2));
  CHECK(parse_rational("7") == BigRational(7));
  CHECK(parse_rational("0.23") == BigRational(23, 100));
  CHECK(parse_rational("1e-6") == BigRational(1, 1000000));
  CHECK(parse_rational("-1.5e-3") == BigRational(-3, 2000));
  CHECK(parse_rational("2.5e2") == BigRational(250));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}

TEST_CASE("fraction strings") {
  CHECK(to_fraction_string(BigRational(29, 13)) == "29/13");
  CHECK(to_fraction_string(BigRational(4, 2)) == "2");
  CHECK(to_fraction_string(BigRational(-11, 32000)) == "-11/32000");
}

TEST_CASE("arithmetic round-trips, fuzzed") {
  SplitMix64 rng(0xf00dULL);
  for (int i = 0; i < 100000; ++i) {
    const std::int64_t pn = static_cast<std::int64_t>(rng.next_below(2000001)) - 1000000;
    const std::int64_t qn = static_cast<std::int64_t>(rng.next_below(1000000)) + 1;
    const std::int64_t rn = static_cast<std::int64_t>(rng.next_below(2000001)) - 1000000;
    const std::int64_t sn = static_cast<std::int64_t>(rng.next_below(1000000)) + 1;
    const BigRational a(pn, qn), b(rn, sn);
    REQUIRE((a + b) - b == a);
    if (b != 0) REQUIRE((a * b) / b == a);
  }
}

TEST_CASE("cgen exact values") {
  CHECK(cgen(BigRational(1, 3), BigRational(7, 32), 0).c == BigRational(29, 13));
  CHECK(cgen(0, BigRational(1, 4), 0).c == BigRational(2));
  CHECK(cgen(BigRational(2, 11), BigRational(49, 206), 0).c == BigRational(2158, 1025));
  CHECK(cgen(BigRational(1, 3), BigRational(7, 32), 0).sigma_in_range);
  CHECK(!cgen(BigRational(1, 3), BigRational(1, 10), 0).sigma_in_range);
  CHECK_THROWS_AS(cgen(BigRational(1), BigRational(0), 0), std::invalid_argument);
}

TEST_CASE("cgen monotone in theta and sigma") {
  const BigRational eps = 0;
  BigRational thetas[] = {BigRational(0), BigRational(1, 20), BigRational(1, 10),
                          BigRational(3, 20), BigRational(2, 11)};
  BigRational sigmas[] = {BigRational(1, 5), BigRational(7, 32), BigRational(49, 206),
                          BigRational(1, 4), BigRational(1, 2)};
  for (const auto& s : sigmas) {
    if (s == BigRational(1, 2)) continue;  // theta drops out at sigma = 1/2
    for (std::size_t i = 0; i + 1 < 5; ++i)
      REQUIRE(cgen(thetas[i], s, eps).c < cgen(thetas[i + 1], s, eps).c);
  }
  for (const auto& t : thetas) {
    if (t == 0) continue;
    for (std::size_t i = 0; i + 1 < 5; ++i)
      REQUIRE(cgen(t, sigmas[i], eps).c > cgen(t, sigmas[i + 1], eps).c);
  }
}

TEST_CASE("large-values sigma threshold") {
  CHECK(jutila_sigma_threshold(BigRational(9, 11)) == BigRational(49, 206));
  CHECK(jutila_sigma_threshold(BigRational(1)) == BigRational(7, 26));
  CHECK(jutila_sigma_threshold(BigRational(1, 2)) == 0);
  CHECK_THROWS_AS(jutila_sigma_threshold(BigRational(7, 20)), std::invalid_argument);

  // substituting the solution back solves the defining linear equation exactly
  SplitMix64 rng(0xbee7ULL);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t num = static_cast<std::int64_t>(rng.next_below(200)) + 1;
    const std::int64_t den = static_cast<std::int64_t>(rng.next_below(200)) + 1;
    const BigRational beta(num, den);
    if (14 - 40 * beta == 0) continue;
    const BigRational sigma = jutila_sigma_threshold(beta);
    REQUIRE(1 + beta * (BigRational(40, 7) * sigma - 2) == 2 * sigma);
  }
}

TEST_CASE("type II feasibility at the working points") {
  const BigRational s = BigRational(49, 206);
  const BigRational theta = BigRational(2, 11);
  const BigRational eps = BigRational(1, 1000000);

  const TypeIIResult good = typeII_feasible(s, s, theta, BigRational(11, 10), eps);
  CHECK(good.feasible);
  CHECK(good.branch == TypeIIBranch::m1_fifth_power_route);

  const TypeIIResult bad = typeII_feasible(s, s, theta, BigRational(21, 20), eps);
  CHECK(!bad.feasible);
  CHECK(bad.branch == TypeIIBranch::none);

  // sigma1 at the 1/2 boundary: the first route condition collapses to a > 1/(1-eps)
  const TypeIIResult boundary =
      typeII_feasible(BigRational(1, 2), s, theta, BigRational(11, 10), eps);
  CHECK(boundary.feasible);
  CHECK(boundary.branch == TypeIIBranch::m2_route);

  CHECK_THROWS_AS(typeII_feasible(BigRational(1, 10), s, theta, BigRational(11, 10), eps),
                  std::invalid_argument);
  CHECK_THROWS_AS(typeII_feasible(s, s, BigRational(1, 2), BigRational(11, 10), eps),
                  std::invalid_argument);
  CHECK_THROWS_AS(typeII_feasible(s, s, theta, BigRational(-1), eps), std::invalid_argument);
}

TEST_CASE("type II feasibility monotone in a") {
  const BigRational s = BigRational(49, 206);
  const BigRational theta = BigRational(2, 11);
  const BigRational eps = BigRational(1, 1000000);
  bool seen_feasible = false;
  for (int num = 100; num <= 130; ++num) {
    const BigRational a(num, 100);
    const bool f = typeII_feasible(s, s, theta, a, eps).feasible;
    if (seen_feasible) REQUIRE(f);  // once feasible, stays feasible
    seen_feasible = seen_feasible || f;
  }
  CHECK(seen_feasible);
}

TEST_CASE("type I/II constraint predicate") {
  CHECK(typeI_II_constraints_ok(BigRational(1, 4), BigRational(1, 4), 0));
  CHECK(typeI_II_constraints_ok(BigRational(1, 3), BigRational(1, 5), BigRational(1, 100)));
  CHECK(!typeI_II_constraints_ok(BigRational(1, 2), BigRational(1, 10), BigRational(1, 100)));
  CHECK(!typeI_II_constraints_ok(BigRational(1, 10), BigRational(3, 10), 0));
}

TEST_CASE("headline constants all pass") {
  const auto checks = headline_constants_check();
  REQUIRE(checks.size() == 5);
  for (const auto& check : checks) {
    INFO(check.name, ": ", check.detail);
    REQUIRE(check.pass);
  }
}
