#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "aplab/core_arith.hpp"

namespace aplab {

enum class Line {
  zero,  // evaluate with n^{-it}
  one    // evaluate with n^{-1-it}
};

// Finite Dirichlet polynomial sum a_n n^{-s} over an integer support range,
// stored sparsely (ascending n, zero coefficients dropped).  Immutable in
// practice: every operation below takes it by const reference.
struct DirichletPolynomial {
  Line line = Line::zero;
  std::uint64_t support_lo = 1;
  std::uint64_t support_hi = 1;
  std::vector<std::pair<std::uint64_t, std::complex<double>>> coeffs;

  double s1 = 0;  // sum |a_n|
  double s2 = 0;  // sum |a_n|^2

  static DirichletPolynomial from_entries(
      std::vector<std::pair<std::uint64_t, std::complex<double>>> entries, Line line);

  std::complex<double> coeff(std::uint64_t n) const;
  std::size_t nnz() const { return coeffs.size(); }
  // count of integers in [support_lo, support_hi]; the N of threshold rules
  std::uint64_t support_length() const { return support_hi - support_lo + 1; }
  // coefficient as evaluated on this line (a_n or a_n/n)
  std::complex<double> effective_coeff(std::size_t i) const;
  double effective_s2() const;
};

// sum a_n n^{-sigma0 - it} with sigma0 fixed by the line; Kahan-compensated,
// fixed index order.
std::complex<double> evaluate(const DirichletPolynomial& poly, double t);

// Exact closed form of integral_{-T}^{T} |A(sigma0 + it)|^2 dt:
//   2T sum |c_n|^2 + sum_{m != n} c_m conj(c_n) 2 sin(T log(n/m)) / log(n/m),
// with c_n the line-effective coefficients.  O(nnz^2); nnz > 1e4 ->
// resource_limit_error.
double mean_square_exact(const DirichletPolynomial& poly, double T);

// Composite-Simpson estimate of the same integral.  step must satisfy
// step <= pi / (4 log support_hi) (resolves the fastest oscillation) and
// T/step <= 1e9.
double mean_square_sampled(const DirichletPolynomial& poly, double T, double step);

// |mean_square_exact - 2T S2| / (N S2) with N = support_hi: the observed
// constant of the O(N) term in the mean value theorem.  Zero polynomial ->
// std::domain_error.
double mvt_defect(const DirichletPolynomial& poly, double T);

// T sum |c_n|^2 + T sum_{0<|k|<=N/T} sum_n |c_n| |c_{n+k}|, N = support_hi.
// The right-hand side of the improved (sparse-support) mean value theorem,
// implied constant set to 1.
double improved_mvt_rhs(const DirichletPolynomial& poly, double T);

// Bracket of the sparse mean value estimate:
//   ((|M|/M)^2 + (NT)^eta (|M| T / (M^2 N) + |M|^{7/4} T^{3/4} / (M^2 N))) amax^2.
// The third term is dropped when N >= T^{2/3} or |M| strictly below T^{1/3}
// (dropping is an optional strengthening; at the boundary the full bound is
// kept).
double hb_sparse_rhs(std::uint64_t card_M, double M, double N, double T, double eta,
                     double amax);

struct PowerPolynomialReport {
  DirichletPolynomial poly;     // coefficients b_m of (sum_{p in (P1, 2P1]} p^{-s})^k
  std::uint64_t prime_count = 0;
  std::uint64_t support_size = 0;
  double max_coeff = 0;
  double coeff_sum = 0;         // = prime_count^k
  double coeff_sum_sq = 0;
  double sparsity_exponent = 0; // log |support| / log(P1^k)
};

// Iterated sparse convolution; k <= 12 and (2 P1_lo)^k <= table.limit
// (resource_limit_error otherwise).
PowerPolynomialReport power_polynomial(double P1_lo, int k, const PrimeTable& table);

struct LargeValueReport {
  double measure = 0;     // grid measure of {t in [-T,T]: |poly(1+it)| > N^{-sigma}}
  double threshold = 0;   // N^{-sigma}
  double ratio = 0;       // measure / T^{2 sigma}
  std::uint64_t grid_points = 0;
};

// Midpoint-grid scan; poly must be on the one-line and step obeys the same
// rule as mean_square_sampled.
LargeValueReport large_value_measure(const DirichletPolynomial& poly, double T, double sigma,
                                     double step);

// (GN/V^2) + (GN/V^2)^{-1/k} G^3 N T / V^6 + (GN/V^2)^{4k} T / N^{2k},
// scaled by (NT)^{slack}.
double jutila_bound(double G, double V, double N, double T, int k, double slack);

enum class TwistedMomentKind { watt, deshouillers_iwaniec };

// Right-hand sides of the fourth-moment twisted estimates, implied constant 1:
//   watt:  T^eps ((T + A^2 T^{1/2}) / (N^2 A) + (T + A)/(T^4 A)) * norm,
//          norm = max |a_m|^2
//   d-i:   same with extra A^{5/4} T^{3/4} in the first numerator,
//          norm = (1/A) sum |a_m|^2
double twisted_moment_rhs(TwistedMomentKind kind, double N, double A, double T, double eps,
                          double norm);

// Simpson estimate of integral_{t_lo}^{t_hi} prod_i |P_i(sigma0 + it)|^{2 e_i} dt,
// used by the empirical audits of the bound evaluators above.
double sampled_moment(const std::vector<const DirichletPolynomial*>& polys,
                      const std::vector<int>& exponents, double t_lo, double t_hi,
                      double step);

} // namespace aplab
