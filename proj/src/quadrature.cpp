#include "aplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace aplab {

namespace {

// QUADPACK 7-15 pair.  Positive abscissae; even indices are Kronrod-only,
// odd indices (and the center) carry the embedded Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

} // namespace

PanelEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fs = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * fs;
    if (i % 2 == 1) gauss += kWg[i / 2] * fs;
  }
  PanelEstimate r;
  r.value = kronrod * half;
  r.error = std::abs((kronrod - gauss) * half);
  return r;
}

AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints, double abs_tol,
                                  std::size_t max_panels) {
  AdaptiveResult out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : breakpoints)
    if (x > a + 1e-15 && x < b - 1e-15) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-15; }),
             cuts.end());

  struct Panel {
    double a, b;
    PanelEstimate est;
  };
  // ordered by error, ties broken by insertion sequence: deterministic
  std::multimap<double, Panel, std::greater<>> queue;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p{cuts[i], cuts[i + 1], gauss_kronrod_15(f, cuts[i], cuts[i + 1])};
    queue.emplace(p.est.error, p);
  }

  auto total_error = [&] {
    double e = 0;
    for (const auto& [err, p] : queue) e += err;
    return e;
  };

  while (queue.size() < max_panels && total_error() > abs_tol) {
    auto worst = queue.begin();
    if (worst->first <= 0) break;  // nothing left to gain
    const Panel p = worst->second;
    queue.erase(worst);
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) {  // interval at floating-point resolution
      Panel stuck = p;
      queue.emplace(0.0, stuck);
      continue;
    }
    Panel left{p.a, mid, gauss_kronrod_15(f, p.a, mid)};
    Panel right{mid, p.b, gauss_kronrod_15(f, mid, p.b)};
    queue.emplace(left.est.error, left);
    queue.emplace(right.est.error, right);
  }

  std::vector<Panel> leaves;
  leaves.reserve(queue.size());
  for (const auto& [err, p] : queue) leaves.push_back(p);
  std::sort(leaves.begin(), leaves.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });

  double sum = 0, comp = 0, err_sum = 0;
  for (const Panel& p : leaves) {
    const double y = p.est.value - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err_sum += p.est.error;
  }
  out.value = sum;
  out.error_estimate = err_sum;
  out.panels = leaves.size();
  out.converged = err_sum <= abs_tol;
  return out;
}

} // namespace aplab
