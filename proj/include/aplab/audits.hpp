#pragma once

#include <cstdint>

#include "aplab/dirichlet.hpp"

namespace aplab {

// Seeded random families behind the empirical "LHS <= C * RHS" checks.  The
// seeds and ceilings are fixtures: the ceilings were set by pilot runs over
// these exact families and the tests assert them verbatim.  Changing a seed
// re-audits a different family and is a fixture change, not a tweak.

inline constexpr std::uint64_t kMvtAgreementSeed = 0x5eed0001u;
inline constexpr std::uint64_t kMvtDefectSeed = 0x5eed0002u;
inline constexpr std::uint64_t kImprovedMvtSeed = 0x5eed0003u;
inline constexpr std::uint64_t kHbAuditSeed = 0x5eed0004u;
inline constexpr std::uint64_t kTwistedAuditSeed = 0x5eed0005u;

inline constexpr double kMvtAgreementRelTol = 1e-6;
inline constexpr double kMvtDefectCeiling = 8.0;
inline constexpr double kImprovedMvtCeiling = 10.0;
inline constexpr double kHbCeiling = 10.0;
inline constexpr double kTwistedCeiling = 100.0;

struct AuditOutcome {
  std::uint64_t instances = 0;
  double worst_ratio = 0;   // max over the family of the audited ratio
  double ceiling = 0;       // the pinned ceiling it is compared against
  bool pass = false;        // worst_ratio <= ceiling
};

// Exact bilinear formula vs sampled quadrature on random +-1 polynomials
// (support <= 200, T <= 1e4); ratio = relative disagreement / kMvtAgreementRelTol.
AuditOutcome audit_mvt_agreement(std::uint64_t seed = kMvtAgreementSeed,
                                 std::uint64_t count = 100);

// Observed constant of the O(N) term on dense +-1 polynomials
// (support <= 500, T <= 1e4); ratio = defect itself, ceiling 8.
AuditOutcome audit_mvt_defect(std::uint64_t seed = kMvtDefectSeed,
                              std::uint64_t count = 100);

// Exact mean square vs the sparse-support right-hand side on prime-supported
// +-1 polynomials with T = N/10; ceiling 10.
AuditOutcome audit_improved_mvt(std::uint64_t seed = kImprovedMvtSeed,
                                std::uint64_t count = 50);

// Sampled integral of |M(1+it)|^2 |A(1+it)|^2 vs hb_sparse_rhs on random
// sparse M-sets; ceiling 10.
AuditOutcome audit_hb_sparse(std::uint64_t seed = kHbAuditSeed, std::uint64_t count = 20);

// Sampled fourth-moment integral vs twisted_moment_rhs; ceiling 100.
AuditOutcome audit_twisted_moment(TwistedMomentKind kind,
                                  std::uint64_t seed = kTwistedAuditSeed,
                                  std::uint64_t count = 20);

// The documented spot instance of the sparse-bracket arithmetic:
// (card, M, N, T, eta, amax) = (10, 100, 50, 1000, 0.1, 1) -> ~0.128.
double hb_documented_instance();

} // namespace aplab
