#include "aplab/audits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "aplab/rng.hpp"
#include "aplab/segmented_sieve.hpp"

namespace aplab {

namespace {

DirichletPolynomial random_pm1_poly(SplitMix64& rng, std::uint64_t support_hi,
                                    double density, Line line) {
  std::vector<std::pair<std::uint64_t, std::complex<double>>> entries;
  for (std::uint64_t n = 1; n <= support_hi; ++n)
    if (rng.next_double() < density)
      entries.emplace_back(n, std::complex<double>(rng.next_sign(), 0.0));
  if (entries.empty()) entries.emplace_back(1, std::complex<double>(1.0, 0.0));
  return DirichletPolynomial::from_entries(std::move(entries), line);
}

double sampling_step(const DirichletPolynomial& poly, double divide) {
  const double cap =
      std::numbers::pi / (4.0 * std::log(static_cast<double>(std::max<std::uint64_t>(
                                    poly.support_hi, 2))));
  return cap / divide;
}

} // namespace

AuditOutcome audit_mvt_agreement(std::uint64_t seed, std::uint64_t count) {
  AuditOutcome out;
  out.instances = count;
  out.ceiling = 1.0;  // ratio is disagreement / tolerance
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, i);
    const std::uint64_t n_hi = 20 + rng.next_below(181);        // <= 200
    const double T = std::pow(10.0, 1.0 + 3.0 * rng.next_double());  // [10, 1e4)
    const DirichletPolynomial poly = random_pm1_poly(rng, n_hi, 0.5, Line::zero);
    const double exact = mean_square_exact(poly, T);
    const double sampled = mean_square_sampled(poly, T, sampling_step(poly, 16.0));
    const double rel = std::abs(exact - sampled) / std::abs(exact);
    out.worst_ratio = std::max(out.worst_ratio, rel / kMvtAgreementRelTol);
  }
  out.pass = out.worst_ratio <= out.ceiling;
  return out;
}

AuditOutcome audit_mvt_defect(std::uint64_t seed, std::uint64_t count) {
  AuditOutcome out;
  out.instances = count;
  out.ceiling = kMvtDefectCeiling;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, i);
    const std::uint64_t n_hi = 50 + rng.next_below(451);        // <= 500
    const double T = std::pow(10.0, 1.0 + 3.0 * rng.next_double());
    const DirichletPolynomial poly = random_pm1_poly(rng, n_hi, 1.0, Line::zero);
    out.worst_ratio = std::max(out.worst_ratio, mvt_defect(poly, T));
  }
  out.pass = out.worst_ratio <= out.ceiling;
  return out;
}

AuditOutcome audit_improved_mvt(std::uint64_t seed, std::uint64_t count) {
  AuditOutcome out;
  out.instances = count;
  out.ceiling = kImprovedMvtCeiling;
  const auto primes = simple_primes(2000);
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, i);
    const std::uint64_t n_hi = 200 + rng.next_below(1801);      // <= 2000
    std::vector<std::pair<std::uint64_t, std::complex<double>>> entries;
    for (std::uint32_t p : primes)
      if (p > n_hi / 2 && p <= n_hi)
        entries.emplace_back(p, std::complex<double>(rng.next_sign(), 0.0));
    if (entries.empty()) entries.emplace_back(2, std::complex<double>(1.0, 0.0));
    const DirichletPolynomial poly =
        DirichletPolynomial::from_entries(std::move(entries), Line::zero);
    const double T = static_cast<double>(n_hi) / 10.0;
    const double lhs = mean_square_exact(poly, T);
    const double rhs = improved_mvt_rhs(poly, T);
    out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
  }
  out.pass = out.worst_ratio <= out.ceiling;
  return out;
}

AuditOutcome audit_hb_sparse(std::uint64_t seed, std::uint64_t count) {
  AuditOutcome out;
  out.instances = count;
  out.ceiling = kHbCeiling;
  constexpr double kEta = 0.1;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, i);
    const double M = 1000.0;
    const std::uint64_t card = 20 + rng.next_below(21);  // 20..40 sparse points
    std::set<std::uint64_t> m_support;
    while (m_support.size() < card)
      m_support.insert(1000 + rng.next_below(3001));  // subset of [M, 4M]
    std::vector<std::pair<std::uint64_t, std::complex<double>>> m_entries;
    for (std::uint64_t m : m_support)
      m_entries.emplace_back(m, std::complex<double>(1.0, 0.0));
    const DirichletPolynomial m_poly =
        DirichletPolynomial::from_entries(std::move(m_entries), Line::one);

    const std::uint64_t n_lo = 100;
    std::vector<std::pair<std::uint64_t, std::complex<double>>> a_entries;
    for (std::uint64_t n = n_lo + 1; n <= 2 * n_lo; ++n)
      a_entries.emplace_back(n, std::complex<double>(rng.next_sign(), 0.0));
    const DirichletPolynomial a_poly =
        DirichletPolynomial::from_entries(std::move(a_entries), Line::one);

    const double T = 1e4;
    const double step = std::min(sampling_step(m_poly, 2.0), sampling_step(a_poly, 2.0));
    const double lhs = sampled_moment({&m_poly, &a_poly}, {1, 1}, -T, T, step);
    const double rhs = hb_sparse_rhs(m_poly.nnz(), M, static_cast<double>(n_lo), T, kEta, 1.0);
    out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
  }
  out.pass = out.worst_ratio <= out.ceiling;
  return out;
}

AuditOutcome audit_twisted_moment(TwistedMomentKind kind, std::uint64_t seed,
                                  std::uint64_t count) {
  AuditOutcome out;
  out.instances = count;
  out.ceiling = kTwistedCeiling;
  for (std::uint64_t i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, i);

    const std::uint64_t n_lo = 1000;
    std::vector<std::pair<std::uint64_t, std::complex<double>>> n_entries;
    for (std::uint64_t n = n_lo + 1; n <= n_lo + 100; ++n)
      n_entries.emplace_back(n, std::complex<double>(1.0, 0.0));
    const DirichletPolynomial n_poly =
        DirichletPolynomial::from_entries(std::move(n_entries), Line::one);

    const double A = 10.0;
    std::vector<std::pair<std::uint64_t, std::complex<double>>> a_entries;
    double s2 = 0;
    for (std::uint64_t m = 11; m <= 20; ++m) {
      const double sign = rng.next_sign();
      a_entries.emplace_back(m, std::complex<double>(sign, 0.0));
      s2 += 1.0;
    }
    const DirichletPolynomial a_poly =
        DirichletPolynomial::from_entries(std::move(a_entries), Line::one);

    const double T = 1e4;
    const double step = std::min(sampling_step(n_poly, 2.0), sampling_step(a_poly, 2.0));
    const double lhs = sampled_moment({&n_poly, &a_poly}, {2, 1}, T / 2.0, T, step);
    const double norm =
        (kind == TwistedMomentKind::watt) ? 1.0 : s2 / A;  // max^2 vs (1/A) sum
    const double rhs =
        twisted_moment_rhs(kind, static_cast<double>(n_poly.support_length()), A, T,
                           0.01, norm);
    out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
  }
  out.pass = out.worst_ratio <= out.ceiling;
  return out;
}

double hb_documented_instance() {
  return hb_sparse_rhs(10, 100.0, 50.0, 1000.0, 0.1, 1.0);
}

} // namespace aplab
