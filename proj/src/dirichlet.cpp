#include "aplab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

DirichletPolynomial DirichletPolynomial::from_entries(
    std::vector<std::pair<std::uint64_t, std::complex<double>>> entries, Line line) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  DirichletPolynomial p;
  p.line = line;
  for (const auto& [n, c] : entries) {
    if (n < 1) throw std::invalid_argument("DirichletPolynomial: support must be >= 1");
    if (c == std::complex<double>(0.0, 0.0)) continue;
    if (!p.coeffs.empty() && p.coeffs.back().first == n)
      p.coeffs.back().second += c;
    else
      p.coeffs.emplace_back(n, c);
  }
  p.coeffs.erase(std::remove_if(p.coeffs.begin(), p.coeffs.end(),
                                [](const auto& e) {
                                  return e.second == std::complex<double>(0.0, 0.0);
                                }),
                 p.coeffs.end());
  if (p.coeffs.empty()) {
    p.support_lo = p.support_hi = 1;
  } else {
    p.support_lo = p.coeffs.front().first;
    p.support_hi = p.coeffs.back().first;
  }
  for (const auto& [n, c] : p.coeffs) {
    const double a = std::abs(c);
    p.s1 += a;
    p.s2 += a * a;
  }
  return p;
}

std::complex<double> DirichletPolynomial::coeff(std::uint64_t n) const {
  const auto it = std::lower_bound(
      coeffs.begin(), coeffs.end(), n,
      [](const auto& e, std::uint64_t key) { return e.first < key; });
  if (it != coeffs.end() && it->first == n) return it->second;
  return {0.0, 0.0};
}

std::complex<double> DirichletPolynomial::effective_coeff(std::size_t i) const {
  const auto& [n, c] = coeffs[i];
  return line == Line::one ? c / static_cast<double>(n) : c;
}

double DirichletPolynomial::effective_s2() const {
  double s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double a = std::abs(effective_coeff(i));
    s += a * a;
  }
  return s;
}

std::complex<double> evaluate(const DirichletPolynomial& poly, double t) {
  std::complex<double> sum{0.0, 0.0}, comp{0.0, 0.0};
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
    const double ln_n = std::log(static_cast<double>(poly.coeffs[i].first));
    const std::complex<double> term =
        poly.effective_coeff(i) * std::polar(1.0, -t * ln_n);
    const std::complex<double> y = term - comp;
    const std::complex<double> s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

double mean_square_exact(const DirichletPolynomial& poly, double T) {
  if (!(T > 0)) throw std::invalid_argument("mean_square_exact: T must be positive");
  if (poly.nnz() > 10000)
    throw resource_limit_error(
        "mean_square_exact: support size above 1e4, use mean_square_sampled");

  const std::size_t k = poly.nnz();
  std::vector<double> ln(k), re(k), im(k);
  for (std::size_t i = 0; i < k; ++i) {
    ln[i] = std::log(static_cast<double>(poly.coeffs[i].first));
    const std::complex<double> c = poly.effective_coeff(i);
    re[i] = c.real();
    im[i] = c.imag();
  }

  double diag = 0;
  for (std::size_t i = 0; i < k; ++i) diag += re[i] * re[i] + im[i] * im[i];

  double off = 0, comp = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dl = ln[j] - ln[i];  // log(n/m) > 0
      // pair (i, j) + (j, i): 2 Re(c_i conj(c_j)) * 2 sin(T dl)/dl
      const double w = 4.0 * std::sin(T * dl) / dl;
      const double term = (re[i] * re[j] + im[i] * im[j]) * w;
      const double y = term - comp;
      const double s = off + y;
      comp = (s - off) - y;
      off = s;
    }
  }
  return 2.0 * T * diag + off;
}

namespace {

double max_step_for(const DirichletPolynomial& poly) {
  if (poly.support_hi <= 1) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (4.0 * std::log(static_cast<double>(poly.support_hi)));
}

// Streaming evaluator on an equally spaced t-grid: one complex rotation per
// coefficient per step.
struct Rotor {
  std::vector<std::complex<double>> coeff;
  std::vector<std::complex<double>> rot;
  std::vector<std::complex<double>> step;

  Rotor(const DirichletPolynomial& poly, double t0, double h) {
    const std::size_t k = poly.nnz();
    coeff.resize(k);
    rot.resize(k);
    step.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double ln_n = std::log(static_cast<double>(poly.coeffs[i].first));
      coeff[i] = poly.effective_coeff(i);
      rot[i] = std::polar(1.0, -t0 * ln_n);
      step[i] = std::polar(1.0, -h * ln_n);
    }
  }

  std::complex<double> value() const {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < coeff.size(); ++i) s += coeff[i] * rot[i];
    return s;
  }

  void advance() {
    for (std::size_t i = 0; i < rot.size(); ++i) rot[i] *= step[i];
  }
};

} // namespace

double mean_square_sampled(const DirichletPolynomial& poly, double T, double step) {
  if (!(T > 0)) throw std::invalid_argument("mean_square_sampled: T must be positive");
  if (!(step > 0) || step > max_step_for(poly))
    throw std::invalid_argument(
        "mean_square_sampled: step too coarse, needs step <= pi/(4 log support_hi)");
  if (T / step > 1e9)
    throw std::invalid_argument("mean_square_sampled: T/step above 1e9");
  if (poly.nnz() == 0) return 0.0;

  std::uint64_t panels = static_cast<std::uint64_t>(std::ceil(2.0 * T / step));
  if (panels % 2 == 1) ++panels;
  const double h = 2.0 * T / static_cast<double>(panels);
  const std::uint64_t points = panels + 1;

  // Simpson weights 1,4,2,...,2,4,1; chunked for determinism and parallelism
  const double sum = parallel_chunked<double>(
      points, 8192,
      [&](std::size_t beg, std::size_t end) {
        Rotor rotor(poly, -T + h * static_cast<double>(beg), h);
        double part = 0, comp = 0;
        for (std::size_t j = beg; j < end; ++j) {
          const double ab = std::abs(rotor.value());
          double w = (j == 0 || j == points - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
          const double term = w * ab * ab;
          const double y = term - comp;
          const double s = part + y;
          comp = (s - part) - y;
          part = s;
          rotor.advance();
        }
        return part;
      },
      [](double acc, double p) { return acc + p; }, 0.0);

  return sum * h / 3.0;
}

double mvt_defect(const DirichletPolynomial& poly, double T) {
  const double s2 = poly.effective_s2();
  if (s2 == 0.0) throw std::domain_error("mvt_defect: zero polynomial has no defect ratio");
  const double ms = mean_square_exact(poly, T);
  const double n = static_cast<double>(poly.support_hi);
  return std::abs(ms - 2.0 * T * s2) / (n * s2);
}

double improved_mvt_rhs(const DirichletPolynomial& poly, double T) {
  if (!(T >= 1)) throw std::invalid_argument("improved_mvt_rhs: T must be >= 1");
  const double s2 = poly.effective_s2();
  const auto kmax = static_cast<std::uint64_t>(
      std::floor(static_cast<double>(poly.support_hi) / T));

  double band = 0;
  if (kmax >= 1) {
    const std::size_t nz = poly.nnz();
    std::vector<double> mag(nz);
    for (std::size_t i = 0; i < nz; ++i) mag[i] = std::abs(poly.effective_coeff(i));
    // both signs of k: 2 * one-sided sum
    for (std::size_t i = 0; i < nz; ++i) {
      const std::uint64_t n = poly.coeffs[i].first;
      std::size_t j = i + 1;
      while (j < nz && poly.coeffs[j].first <= n + kmax) {
        band += 2.0 * mag[i] * mag[j];
        ++j;
      }
    }
  }
  return T * s2 + T * band;
}

double hb_sparse_rhs(std::uint64_t card_M, double M, double N, double T, double eta,
                     double amax) {
  if (!(T >= M && M >= 1.0))
    throw std::invalid_argument("hb_sparse_rhs: need T >= M >= 1");
  if (!(N >= 2.0)) throw std::invalid_argument("hb_sparse_rhs: need N >= 2");

  const double cm = static_cast<double>(card_M);
  const double first = (cm / M) * (cm / M);
  const double second = cm * T / (M * M * N);
  double bracket = second;
  const bool drop_third = (N >= std::cbrt(T) * std::cbrt(T)) || (cm < std::cbrt(T));
  if (!drop_third) bracket += std::pow(cm, 1.75) * std::pow(T, 0.75) / (M * M * N);
  return (first + std::pow(N * T, eta) * bracket) * amax * amax;
}

PowerPolynomialReport power_polynomial(double P1_lo, int k, const PrimeTable& table) {
  if (!(P1_lo >= 1.0)) throw std::invalid_argument("power_polynomial: P1_lo must be >= 1");
  if (k < 1 || k > 12) throw std::invalid_argument("power_polynomial: k must lie in [1, 12]");
  const double top = std::pow(2.0 * P1_lo, k);
  if (top > static_cast<double>(table.limit))
    throw resource_limit_error("power_polynomial: (2 P1_lo)^k exceeds table limit");

  std::vector<std::uint64_t> primes;
  for (std::uint32_t p : table.primes) {
    if (static_cast<double>(p) > 2.0 * P1_lo) break;
    if (static_cast<double>(p) > P1_lo) primes.push_back(p);
  }

  // b_m counts ordered k-tuples of window primes with product m
  std::map<std::uint64_t, double> conv;
  conv[1] = 1.0;
  for (int round = 0; round < k; ++round) {
    std::map<std::uint64_t, double> next;
    for (const auto& [m, b] : conv)
      for (std::uint64_t p : primes) next[m * p] += b;
    conv = std::move(next);
  }

  PowerPolynomialReport rep;
  rep.prime_count = primes.size();
  std::vector<std::pair<std::uint64_t, std::complex<double>>> entries;
  entries.reserve(conv.size());
  for (const auto& [m, b] : conv) {
    entries.emplace_back(m, std::complex<double>(b, 0.0));
    rep.max_coeff = std::max(rep.max_coeff, b);
    rep.coeff_sum += b;
    rep.coeff_sum_sq += b * b;
  }
  rep.poly = DirichletPolynomial::from_entries(std::move(entries), Line::one);
  rep.support_size = rep.poly.nnz();
  const double logM = static_cast<double>(k) * std::log(P1_lo);
  rep.sparsity_exponent =
      (rep.support_size > 0 && logM > 0)
          ? std::log(static_cast<double>(rep.support_size)) / logM
          : 0.0;
  return rep;
}

LargeValueReport large_value_measure(const DirichletPolynomial& poly, double T, double sigma,
                                     double step) {
  if (poly.line != Line::one)
    throw std::invalid_argument("large_value_measure: polynomial must be on the one-line");
  if (!(T > 0)) throw std::invalid_argument("large_value_measure: T must be positive");
  if (!(step > 0) || step > max_step_for(poly))
    throw std::invalid_argument("large_value_measure: step too coarse");
  if (T / step > 1e9)
    throw std::invalid_argument("large_value_measure: T/step above 1e9");

  const double n_len = static_cast<double>(poly.support_length());
  const double threshold = std::pow(n_len, -sigma);

  const auto points = static_cast<std::uint64_t>(std::ceil(2.0 * T / step));
  const double h = 2.0 * T / static_cast<double>(points);

  const std::uint64_t exceed = parallel_chunked<std::uint64_t>(
      points, 8192,
      [&](std::size_t beg, std::size_t end) {
        Rotor rotor(poly, -T + h * (static_cast<double>(beg) + 0.5), h);
        std::uint64_t c = 0;
        for (std::size_t j = beg; j < end; ++j) {
          if (std::abs(rotor.value()) > threshold) ++c;
          rotor.advance();
        }
        return c;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; }, std::uint64_t{0});

  LargeValueReport rep;
  rep.threshold = threshold;
  rep.grid_points = points;
  rep.measure = h * static_cast<double>(exceed);
  rep.ratio = rep.measure / std::pow(T, 2.0 * sigma);
  return rep;
}

double jutila_bound(double G, double V, double N, double T, int k, double slack) {
  if (!(G > 0 && V > 0 && N > 0 && T > 0) || k < 1)
    throw std::invalid_argument("jutila_bound: arguments must be positive, k >= 1");
  const double base = G * N / (V * V);
  const double t1 = base;
  const double t2 = std::pow(base, -1.0 / static_cast<double>(k)) * G * G * G * N * T /
                    std::pow(V, 6.0);
  const double t3 = std::pow(base, 4.0 * static_cast<double>(k)) * T /
                    std::pow(N, 2.0 * static_cast<double>(k));
  return std::pow(N * T, slack) * (t1 + t2 + t3);
}

double twisted_moment_rhs(TwistedMomentKind kind, double N, double A, double T, double eps,
                          double norm) {
  if (!(N >= 1 && A >= 1 && T >= 1))
    throw std::invalid_argument("twisted_moment_rhs: need N, A, T >= 1");
  double first = T + A * A * std::sqrt(T);
  if (kind == TwistedMomentKind::deshouillers_iwaniec)
    first += std::pow(A, 1.25) * std::pow(T, 0.75);
  const double bracket = first / (N * N * A) + (T + A) / (std::pow(T, 4.0) * A);
  return std::pow(T, eps) * bracket * norm;
}

double sampled_moment(const std::vector<const DirichletPolynomial*>& polys,
                      const std::vector<int>& exponents, double t_lo, double t_hi,
                      double step) {
  if (polys.size() != exponents.size() || polys.empty())
    throw std::invalid_argument("sampled_moment: polys/exponents size mismatch");
  if (!(t_hi > t_lo)) throw std::invalid_argument("sampled_moment: need t_hi > t_lo");
  double max_step = std::numeric_limits<double>::infinity();
  for (const auto* p : polys) max_step = std::min(max_step, max_step_for(*p));
  if (!(step > 0) || step > max_step)
    throw std::invalid_argument("sampled_moment: step too coarse");
  if ((t_hi - t_lo) / step > 1e9)
    throw std::invalid_argument("sampled_moment: range/step above 1e9");

  std::uint64_t panels = static_cast<std::uint64_t>(std::ceil((t_hi - t_lo) / step));
  if (panels % 2 == 1) ++panels;
  const double h = (t_hi - t_lo) / static_cast<double>(panels);
  const std::uint64_t points = panels + 1;

  const double sum = parallel_chunked<double>(
      points, 4096,
      [&](std::size_t beg, std::size_t end) {
        std::vector<Rotor> rotors;
        rotors.reserve(polys.size());
        for (const auto* p : polys)
          rotors.emplace_back(*p, t_lo + h * static_cast<double>(beg), h);
        double part = 0, comp = 0;
        for (std::size_t j = beg; j < end; ++j) {
          double f = 1.0;
          for (std::size_t q = 0; q < rotors.size(); ++q) {
            const double ab = std::abs(rotors[q].value());
            for (int e = 0; e < exponents[q]; ++e) f *= ab * ab;
            rotors[q].advance();
          }
          const double w = (j == 0 || j == points - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
          const double term = w * f;
          const double y = term - comp;
          const double s = part + y;
          comp = (s - part) - y;
          part = s;
        }
        return part;
      },
      [](double acc, double p) { return acc + p; }, 0.0);

  return sum * h / 3.0;
}

} // namespace aplab
