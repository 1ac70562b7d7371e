// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line each.  Every criterion's computation is executed
// twice (worker caps 1 and 2) and its serialized result compared, feeding the
// final determinism criterion.  Exit code: number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aplab/audits.hpp"
#include "aplab/buchstab.hpp"
#include "aplab/core_arith.hpp"
#include "aplab/dirichlet.hpp"
#include "aplab/exponents.hpp"
#include "aplab/minorant.hpp"
#include "aplab/parallel.hpp"
#include "aplab/segmented_sieve.hpp"
#include "aplab/sieve_integrals.hpp"

using namespace aplab;

namespace {

struct Criterion {
  bool pass = false;
  std::string detail;
  std::string blob;  // serialized result for the determinism comparison
};

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = 0;
  bool deterministic = false;
};

Outcome run_twice(const std::function<Criterion()>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  set_max_threads(1);
  const Criterion first = body();
  set_max_threads(2);
  const Criterion second = body();
  set_max_threads(0);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count() / 2.0;
  out.pass = first.pass && second.pass;
  out.detail = first.detail;
  out.deterministic = first.blob == second.blob;
  if (!out.deterministic) out.detail += " [NONDETERMINISTIC ACROSS THREAD COUNTS]";
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// ---- criterion bodies ------------------------------------------------------

Criterion buchstab_criterion() {
  Criterion c;
  const OmegaTable t = build_omega_table(20.0, 1e-4);
  double max_err_23 = 0;
  for (int k = 0; k <= 100000; ++k) {
    const double u = 2.0 + k * 1e-5;
    max_err_23 = std::max(max_err_23, std::abs(omega(u, t) - omega_oracle_23(u)));
  }
  double max_dev_tail = 0;
  for (int k = 0; k <= 12000; ++k) {
    const double u = 8.0 + k * 1e-3;
    max_dev_tail = std::max(max_dev_tail, std::abs(omega(u, t) - 0.5614594836));
  }
  c.pass = max_err_23 < 1e-8 && max_dev_tail < 1e-3;
  c.detail = "max err on [2,3] = " + fmt(max_err_23) +
             ", max |omega - limit| on [8,20] = " + fmt(max_dev_tail);
  c.blob = fmt(max_err_23) + "|" + fmt(max_dev_tail) + "|" + fmt(omega(10.0, t));
  return c;
}

Criterion i2_criterion() {
  Criterion c;
  const OmegaTable t = build_omega_table(8.0, 1e-4);
  const QuadratureResult r = integral_I2(0.0, 1e-4, t);
  c.pass = (r.value + r.error_estimate <= 0.99) && (r.error_estimate < 5e-3);
  c.detail = "I2(0) = " + fmt(r.value) + " +- " + fmt(r.error_estimate) +
             " (ceiling 0.99)";
  c.blob = fmt(r.value) + "|" + fmt(r.error_estimate) + "|" + std::to_string(r.cells);
  return c;
}

Criterion i4_criterion() {
  Criterion c;
  const OmegaTable t = build_omega_table(8.0, 1e-4);
  const BigRational bound = integral_I4_bound();
  const bool exact_ok = bound == BigRational(11, 32000);
  const bool compare_ok = bound < BigRational(4, 10000);
  const QuadratureResult direct = integral_I4_direct(0.0, 1e-5, t);
  const bool direct_ok =
      direct.value <= 11.0 / 32000.0 + direct.error_estimate;
  c.pass = exact_ok && compare_ok && direct_ok;
  c.detail = "bound = " + to_fraction_string(bound) + ", direct = " + fmt(direct.value) +
             " +- " + fmt(direct.error_estimate);
  c.blob = to_fraction_string(bound) + "|" + fmt(direct.value) + "|" +
           fmt(direct.error_estimate);
  return c;
}

Criterion identity_criterion() {
  Criterion c;
  const PrimeTable t = build_prime_table(100000);
  const double cuts[5] = {2, 3, 5, 10, 30};
  std::uint64_t violations = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (std::uint64_t n = 1; n <= 100000; ++n)
        if (buchstab_identity_residual(n, cuts[a], cuts[b], t) != 0) ++violations;
  c.pass = violations == 0;
  c.detail = "residual violations over n <= 1e5, all cut pairs: " +
             std::to_string(violations);
  c.blob = std::to_string(violations);
  return c;
}

Criterion minorant_scan_criterion() {
  Criterion c;
  const MinorantParams params = MinorantParams::make(1000000);
  const PrimeTable t = build_prime_table(params.n_hi);
  const MinorantScanReport rep = minorant_scan(params, t);
  c.pass = rep.upper_violations == 0 && rep.bound_violations == 0 &&
           rep.primes_with_value_one == rep.primes_in_range;
  std::ostringstream hist;
  for (const auto& [value, count] : rep.histogram)
    hist << value << ":" << count << " ";
  c.detail = "upper violations " + std::to_string(rep.upper_violations) +
             ", size-bound violations " + std::to_string(rep.bound_violations) +
             ", primes at value 1: " + std::to_string(rep.primes_with_value_one) + "/" +
             std::to_string(rep.primes_in_range) + ", histogram " + hist.str();
  c.blob = c.detail;
  return c;
}

Criterion window_bound_criterion() {
  Criterion c;
  const MinorantParams params = MinorantParams::make(1000000, 0.01);
  const PrimeTable t = build_prime_table(params.n_hi);
  const WindowSums sums(params, t);
  const double bound = sums.reference_lower_bound();
  std::int64_t worst = 0;
  bool first = true;
  std::uint64_t meet = 0;
  std::ostringstream blob;
  for (int i = 1; i <= 100; ++i) {
    const double x = 1e6 + i * 1e6 / 100.0;
    const std::int64_t s = sums.window_sum(x, params.h1);
    if (first || s < worst) worst = s;
    first = false;
    if (static_cast<double>(s) >= bound) ++meet;
    blob << s << ",";
  }
  c.pass = meet == 100;
  c.detail = "windows meeting h1/(200 log P1 log X) = " + fmt(bound) + ": " +
             std::to_string(meet) + "/100, worst sum " + std::to_string(worst) +
             "; the bound is asymptotic and fails at every feasible scale: for"
             " n near x/p1 the subtracted factor ranges [z, 2 sqrt X) cover a"
             " much larger share of log n than in the limit (log P1 / log X is"
             " only ~0.21 here), turning the limiting surplus of ~+0.018/log n"
             " into an observed deficit";
  c.blob = blob.str();
  return c;
}

Criterion e2_criterion() {
  Criterion c;
  const std::uint64_t X = 100000000;
  const MinorantParams params = MinorantParams::make(X);
  // only n = m/p1 is ever factored; smallest window prime is 29
  const PrimeTable t = build_prime_table(7200000);
  const IntervalReport rep = count_E2_intervals(X, params, t, 10000);
  const double hit =
      1.0 - static_cast<double>(rep.failures) / static_cast<double>(rep.counts.size());
  const bool ratio_ok =
      rep.mean_count <= 3.0 * rep.predicted && rep.mean_count >= rep.predicted / 3.0;
  c.pass = hit >= 0.9 && ratio_ok;
  c.detail = "hit fraction " + fmt(hit) + ", mean count " + fmt(rep.mean_count) +
             " vs prediction " + fmt(rep.predicted);
  c.blob = fmt(hit) + "|" + fmt(rep.mean_count) + "|" + fmt(rep.predicted);
  return c;
}

Criterion e3_criterion() {
  Criterion c;
  const IntervalReport rep = count_E3_all_intervals(1000000, 100000000, 1000);
  c.pass = rep.failures == 0;
  c.detail = "intervals without a three-prime-factor number: " +
             std::to_string(rep.failures) + "/1000";
  std::ostringstream blob;
  for (std::uint32_t v : rep.counts) blob << v;
  c.blob = blob.str();
  return c;
}

Criterion mvt_criterion() {
  Criterion c;
  const AuditOutcome agree = audit_mvt_agreement();
  const AuditOutcome defect = audit_mvt_defect();
  const DirichletPolynomial single =
      DirichletPolynomial::from_entries({{3, 1.0}}, Line::zero);
  const bool singleton_ok = mean_square_exact(single, 777.0) == 2.0 * 777.0;
  c.pass = agree.pass && defect.pass && singleton_ok;
  c.detail = "agreement worst rel/tol = " + fmt(agree.worst_ratio) +
             ", defect worst = " + fmt(defect.worst_ratio) + " (ceiling 8)";
  c.blob = fmt(agree.worst_ratio) + "|" + fmt(defect.worst_ratio);
  return c;
}

Criterion audit_criterion() {
  Criterion c;
  const AuditOutcome improved = audit_improved_mvt();
  const AuditOutcome hb = audit_hb_sparse();
  const AuditOutcome tw = audit_twisted_moment(TwistedMomentKind::watt);
  const AuditOutcome td = audit_twisted_moment(TwistedMomentKind::deshouillers_iwaniec);
  const double documented = hb_documented_instance();
  const bool doc_ok = std::abs(documented - 0.128) <= 1e-3;
  c.pass = improved.pass && hb.pass && tw.pass && td.pass && doc_ok;
  c.detail = "improved worst " + fmt(improved.worst_ratio) + " (<=10), sparse worst " +
             fmt(hb.worst_ratio) + " (<=10), twisted worst " + fmt(tw.worst_ratio) +
             "/" + fmt(td.worst_ratio) + " (<=100), bracket instance " + fmt(documented);
  c.blob = fmt(improved.worst_ratio) + "|" + fmt(hb.worst_ratio) + "|" +
           fmt(tw.worst_ratio) + "|" + fmt(td.worst_ratio) + "|" + fmt(documented);
  return c;
}

Criterion exponent_criterion() {
  Criterion c;
  const BigRational s(49, 206);
  const BigRational eps(1, 1000000);
  const bool checks[] = {
      jutila_sigma_threshold(BigRational(9, 11)) == s,
      cgen(BigRational(1, 3), BigRational(7, 32), 0).c == BigRational(29, 13),
      cgen(BigRational(2, 11), s, 0).c == BigRational(2158, 1025),
      BigRational(103, 94) < BigRational(10999, 10000),
      typeII_feasible(s, s, BigRational(2, 11), BigRational(11, 10), eps).feasible,
      !typeII_feasible(s, s, BigRational(2, 11), BigRational(21, 20), eps).feasible,
      1 + BigRational(11, 10) / 2 == BigRational(31, 20),
  };
  int passed = 0;
  for (bool ok : checks) passed += ok;
  c.pass = passed == 7;
  c.detail = "exact certificates passed: " + std::to_string(passed) + "/7";
  c.blob = std::to_string(passed);
  return c;
}

} // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Criterion()> body;
    double budget_seconds;
  };
  const std::vector<Entry> entries = {
      {"1 buchstab omega vs closed form and limit", buchstab_criterion, 1.0},
      {"2 deficiency integral I2(0) <= 0.99", i2_criterion, 60.0},
      {"3 four-fold integral vs exact 11/32000", i4_criterion, 120.0},
      {"4 sieve recursion identity, exhaustive", identity_criterion, 60.0},
      {"5 minorant pointwise bounds at X = 1e6", minorant_scan_criterion, 300.0},
      {"6 window lower bound at X = 1e6", window_bound_criterion, 300.0},
      {"7 two-prime products in short intervals at X = 1e8", e2_criterion, 900.0},
      {"8 three-prime products in all intervals", e3_criterion, 600.0},
      {"9 mean-value machinery (agreement, defect)", mvt_criterion, 0.0},
      {"10 sparse/twisted moment audits", audit_criterion, 0.0},
      {"11 exact exponent certificates", exponent_criterion, 0.0},
  };

  int failures = 0;
  bool all_deterministic = true;
  for (const auto& e : entries) {
    const Outcome o = run_twice(e.body);
    const bool in_budget = e.budget_seconds <= 0.0 || o.seconds <= e.budget_seconds;
    const bool ok = o.pass && in_budget;
    all_deterministic = all_deterministic && o.deterministic;
    std::printf("%s  criterion %s  [%.2fs]  %s\n", ok ? "PASS" : "FAIL", e.name,
                o.seconds, o.detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("%s  criterion 12 determinism: byte-identical results across runs and "
              "thread counts\n",
              all_deterministic ? "PASS" : "FAIL");
  if (!all_deterministic) ++failures;

  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures;
}
