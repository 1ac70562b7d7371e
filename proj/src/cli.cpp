#include "aplab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <exception>
#include <numbers>
#include <iostream>
#include <sstream>
#include <string>

#include "aplab/audits.hpp"
#include "aplab/buchstab.hpp"
#include "aplab/core_arith.hpp"
#include "aplab/dirichlet.hpp"
#include "aplab/errors.hpp"
#include "aplab/exponents.hpp"
#include "aplab/minorant.hpp"
#include "aplab/parallel.hpp"
#include "aplab/report.hpp"
#include "aplab/segmented_sieve.hpp"
#include "aplab/sieve_integrals.hpp"

namespace aplab {

namespace {

struct CommonOpts {
  std::string format = "human";
  bool json = false;
  bool csv = false;
  std::string out;
  int threads = 0;
  std::uint64_t seed = 0;

  ReportFormat resolved_format() const {
    if (json) return ReportFormat::json;
    if (csv) return ReportFormat::csv;
    if (format == "json") return ReportFormat::json;
    if (format == "csv") return ReportFormat::csv;
    if (format == "human") return ReportFormat::human;
    throw CLI::ValidationError("--format must be one of human, json, csv");
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format: human, json, csv")
      ->envname("APL_FORMAT");
  cmd->add_flag("--json", opts.json, "Shortcut for --format json");
  cmd->add_flag("--csv", opts.csv, "Shortcut for --format csv");
  cmd->add_option("--out", opts.out, "Output path (default stdout)");
  cmd->add_option("--threads", opts.threads, "Worker cap (0 = hardware)")
      ->envname("APL_THREADS");
  cmd->add_option("--seed", opts.seed, "Seed recorded in the report")
      ->envname("APL_SEED");
}

std::vector<double> parse_double_list(const std::string& csv_list) {
  std::vector<double> values;
  std::stringstream ss(csv_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

int cmd_omega(const CommonOpts& opts, const std::string& u_list, double u_max, double step) {
  const OmegaTable table = build_omega_table(u_max, step);
  const std::vector<double> us = parse_double_list(u_list);

  Json params;
  params["u"] = u_list;
  params["u_max"] = u_max;
  params["step"] = step;
  Json report = make_report("omega", "buchstab-omega-values", params, opts.seed);

  Json rows = Json::array();
  for (double u : us) rows.push_back(Json::array({u, omega(u, table)}));
  report["table"] = Json{{"columns", Json::array({"u", "omega"})}, {"rows", rows}};
  report["results"] = Json{{"points", us.size()}, {"limit_e_minus_gamma", kOmegaLimit}};
  emit_report(report, opts.resolved_format(), opts.out);
  return 0;
}

int cmd_integrals(const CommonOpts& opts, double eps, double tol, std::uint64_t i4_points,
                  std::uint64_t i4_seed) {
  const OmegaTable table = build_omega_table(8.0, 1e-4);
  const QuadratureResult i2 = integral_I2(eps, tol, table);
  const double i4_tol = std::max(tol / 10.0, 1e-6);
  const QuadratureResult i4 = integral_I4_direct(eps, i4_tol, table, i4_points, i4_seed);
  const BigRational bound = integral_I4_bound();
  const double margin = 1.0 - i2.value - i4.value;
  const double margin_err = i2.error_estimate + i4.error_estimate;

  Json params;
  params["eps"] = eps;
  params["tol"] = tol;
  params["i4_points"] = i4_points;
  params["i4_seed"] = i4_seed;
  Json report =
      make_report("integrals", "sieve-deficiency-integrals-I2-I4", params, opts.seed);
  Json results;
  results["I2"] = i2.value;
  results["I2_err"] = i2.error_estimate;
  results["I2_cells"] = i2.cells;
  results["I4_direct"] = i4.value;
  results["I4_direct_err"] = i4.error_estimate;
  results["I4_cells"] = i4.cells;
  results["I4_boundary_measure"] = i4.boundary_measure;
  results["I4_bound"] = to_fraction_string(bound);
  results["I4_bound_decimal"] = static_cast<double>(bound);
  results["margin"] = margin;
  results["margin_err"] = margin_err;
  results["omega_zero_region_measure"] = i2_zero_omega_region_measure(eps, tol);
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return 0;
}

int cmd_minorant_scan(const CommonOpts& opts, std::uint64_t X, double eps, double a,
                      double c) {
  const MinorantParams params = MinorantParams::make(X, eps, c, a);
  const PrimeTable table = build_prime_table(params.n_hi);
  const MinorantScanReport scan = minorant_scan(params, table);

  Json jparams;
  jparams["X"] = X;
  jparams["eps"] = eps;
  jparams["a"] = a;
  jparams["c"] = c;
  Json report = make_report("minorant-scan", "prime-minorant-pointwise-bounds", jparams,
                            opts.seed);
  Json results;
  results["n_scanned"] = scan.n_scanned;
  results["upper_violations"] = scan.upper_violations;
  results["bound_violations"] = scan.bound_violations;
  results["primes_in_range"] = scan.primes_in_range;
  results["primes_with_value_one"] = scan.primes_with_value_one;
  results["bound_factor"] = scan.bound_factor;
  Json hist;
  for (const auto& [value, count] : scan.histogram)
    hist[std::to_string(value)] = count;
  results["histogram"] = hist;
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return (scan.upper_violations == 0 && scan.bound_violations == 0 &&
          scan.primes_with_value_one == scan.primes_in_range)
             ? 0
             : 1;
}

int cmd_count_e2(const CommonOpts& opts, std::uint64_t X, double eps, double a, double c,
                 std::uint64_t sample) {
  const MinorantParams params = MinorantParams::make(X, eps, c, a);
  const double h_max = std::pow(std::log(2.0 * static_cast<double>(X)), c);
  const auto first_prime_above = [](double bound) {
    auto primes = simple_primes(static_cast<std::uint32_t>(4.0 * bound) + 64);
    for (std::uint32_t p : primes)
      if (static_cast<double>(p) > bound) return p;
    return primes.back();
  };
  const std::uint64_t limit = static_cast<std::uint64_t>(
                                  (2.0 * static_cast<double>(X) + h_max) /
                                  first_prime_above(params.P1)) + 2;
  const PrimeTable table = build_prime_table(std::max<std::uint64_t>(
      limit, static_cast<std::uint64_t>(2.0 * params.P1) + 2));
  const IntervalReport rep = count_E2_intervals(X, params, table, sample);

  Json jparams;
  jparams["X"] = X;
  jparams["eps"] = eps;
  jparams["a"] = a;
  jparams["c"] = c;
  jparams["sample"] = sample;
  Json report = make_report("count-e2", "two-prime-products-in-short-intervals", jparams,
                            opts.seed);
  Json results;
  results["sample"] = sample;
  results["mean_count"] = rep.mean_count;
  results["predicted"] = rep.predicted;
  results["failures"] = rep.failures;
  results["fraction_hit"] =
      1.0 - static_cast<double>(rep.failures) / static_cast<double>(sample);
  report["results"] = results;
  Json rows = Json::array();
  for (std::size_t i = 0; i < rep.x_grid.size(); ++i)
    rows.push_back(Json::array({rep.x_grid[i], rep.counts[i], rep.predicted_per_x[i]}));
  report["table"] =
      Json{{"columns", Json::array({"x", "count", "predicted"})}, {"rows", rows}};
  emit_report(report, opts.resolved_format(), opts.out);
  return 0;
}

int cmd_count_e3(const CommonOpts& opts, std::uint64_t x_lo, std::uint64_t x_hi,
                 std::uint64_t grid, double exponent) {
  const IntervalReport rep = count_E3_all_intervals(x_lo, x_hi, grid, exponent);

  Json jparams;
  jparams["x_lo"] = x_lo;
  jparams["x_hi"] = x_hi;
  jparams["grid"] = grid;
  jparams["exponent"] = exponent;
  Json report =
      make_report("count-e3", "three-prime-products-in-all-intervals", jparams, opts.seed);
  Json results;
  results["grid"] = grid;
  results["failures"] = rep.failures;
  results["fraction_hit"] =
      1.0 - static_cast<double>(rep.failures) / static_cast<double>(grid);
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return rep.failures == 0 ? 0 : 1;
}

int cmd_variance(const CommonOpts& opts, std::uint64_t X, double eps, double a, double c,
                 std::uint64_t sample) {
  const MinorantParams params = MinorantParams::make(X, eps, c, a);
  const PrimeTable table = build_prime_table(params.n_hi);
  const VarianceReport rep = variance_experiment(params, table, sample);

  Json jparams;
  jparams["X"] = X;
  jparams["eps"] = eps;
  jparams["a"] = a;
  jparams["c"] = c;
  jparams["sample"] = sample;
  Json report =
      make_report("variance", "window-average-mean-square-deviation", jparams, opts.seed);
  Json results;
  results["mean_square"] = rep.mean_square;
  results["ratio_to_log_minus2"] = rep.ratio;
  results["ci_half_width"] = rep.ci_half_width;
  results["sample"] = rep.sample;
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return 0;
}

int cmd_mvt(const CommonOpts& opts, std::uint64_t count, std::uint64_t seed) {
  const AuditOutcome agree = audit_mvt_agreement(seed ? seed : kMvtAgreementSeed, count);
  const AuditOutcome defect = audit_mvt_defect(seed ? seed : kMvtDefectSeed, count);
  const AuditOutcome improved = audit_improved_mvt(seed ? seed : kImprovedMvtSeed,
                                                   std::max<std::uint64_t>(count / 2, 1));

  Json jparams;
  jparams["count"] = count;
  Json report = make_report("mvt", "dirichlet-mean-value-audits", jparams,
                            seed ? seed : kMvtAgreementSeed);
  Json results;
  results["agreement_worst_over_tol"] = agree.worst_ratio;
  results["agreement_pass"] = agree.pass;
  results["defect_worst"] = defect.worst_ratio;
  results["defect_ceiling"] = defect.ceiling;
  results["defect_pass"] = defect.pass;
  results["improved_worst_ratio"] = improved.worst_ratio;
  results["improved_ceiling"] = improved.ceiling;
  results["improved_pass"] = improved.pass;
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return (agree.pass && defect.pass && improved.pass) ? 0 : 1;
}

int cmd_hb_check(const CommonOpts& opts, std::uint64_t count, std::uint64_t seed) {
  const double documented = hb_documented_instance();
  const AuditOutcome audit = audit_hb_sparse(seed ? seed : kHbAuditSeed, count);

  Json jparams;
  jparams["count"] = count;
  Json report = make_report("hb-check", "sparse-mean-value-bracket-audit", jparams,
                            seed ? seed : kHbAuditSeed);
  Json results;
  results["documented_instance"] = documented;
  results["documented_expected"] = 0.128;
  results["worst_ratio"] = audit.worst_ratio;
  results["ceiling"] = audit.ceiling;
  results["pass"] = audit.pass;
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  const bool doc_ok = std::abs(documented - 0.128) <= 1e-3;
  return (audit.pass && doc_ok) ? 0 : 1;
}

int cmd_large_values(const CommonOpts& opts, std::uint64_t N, double T, double sigma,
                     double step_divide) {
  std::vector<std::pair<std::uint64_t, std::complex<double>>> entries;
  for (std::uint64_t n = N + 1; n <= 2 * N; ++n)
    entries.emplace_back(n, std::complex<double>(1.0, 0.0));
  const DirichletPolynomial poly =
      DirichletPolynomial::from_entries(std::move(entries), Line::one);
  const double step =
      std::numbers::pi / (4.0 * std::log(static_cast<double>(poly.support_hi))) /
      step_divide;
  const LargeValueReport rep = large_value_measure(poly, T, sigma, step);

  Json jparams;
  jparams["N"] = N;
  jparams["T"] = T;
  jparams["sigma"] = sigma;
  jparams["step"] = step;
  Json report =
      make_report("large-values", "dirichlet-large-value-measure", jparams, opts.seed);
  Json results;
  results["measure"] = rep.measure;
  results["threshold"] = rep.threshold;
  results["ratio_to_T_2sigma"] = rep.ratio;
  results["grid_points"] = rep.grid_points;
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return 0;
}

int cmd_twisted(const CommonOpts& opts, const std::string& which, std::uint64_t count,
                std::uint64_t seed) {
  TwistedMomentKind kind;
  if (which == "watt")
    kind = TwistedMomentKind::watt;
  else if (which == "deshouillers-iwaniec" || which == "di")
    kind = TwistedMomentKind::deshouillers_iwaniec;
  else
    throw CLI::ValidationError("--which must be watt or deshouillers-iwaniec");

  const AuditOutcome audit = audit_twisted_moment(kind, seed ? seed : kTwistedAuditSeed,
                                                  count);
  Json jparams;
  jparams["which"] = which;
  jparams["count"] = count;
  Json report = make_report("twisted-moment", "twisted-fourth-moment-audit", jparams,
                            seed ? seed : kTwistedAuditSeed);
  Json results;
  results["worst_ratio"] = audit.worst_ratio;
  results["ceiling"] = audit.ceiling;
  results["pass"] = audit.pass;
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return audit.pass ? 0 : 1;
}

int cmd_exponents(const CommonOpts& opts, bool check_headline,
                  const std::vector<std::string>& cgen_args,
                  const std::vector<std::string>& typeii_args) {
  Json jparams;
  jparams["check_headline"] = check_headline;
  Json report = make_report("exponents", "exact-exponent-certificates", jparams, opts.seed);
  Json results;
  bool all_pass = true;

  if (check_headline) {
    Json rows = Json::array();
    for (const HeadlineCheck& check : headline_constants_check()) {
      rows.push_back(Json::array(
          {check.name, check.detail, check.pass ? "pass" : "FAIL"}));
      all_pass = all_pass && check.pass;
    }
    report["table"] =
        Json{{"columns", Json::array({"check", "detail", "status"})}, {"rows", rows}};
    results["headline_all_pass"] = all_pass;
  }
  if (!cgen_args.empty()) {
    if (cgen_args.size() != 3)
      throw CLI::ValidationError("--cgen needs three rationals: theta sigma eps");
    const CgenResult r = cgen(parse_rational(cgen_args[0]), parse_rational(cgen_args[1]),
                              parse_rational(cgen_args[2]));
    results["cgen"] = to_fraction_string(r.c);
    results["cgen_sigma_in_range"] = r.sigma_in_range;
  }
  if (!typeii_args.empty()) {
    if (typeii_args.size() != 5)
      throw CLI::ValidationError("--typeii needs five rationals: sigma1 sigma2 theta a eps");
    const TypeIIResult r =
        typeII_feasible(parse_rational(typeii_args[0]), parse_rational(typeii_args[1]),
                        parse_rational(typeii_args[2]), parse_rational(typeii_args[3]),
                        parse_rational(typeii_args[4]));
    results["typeii_feasible"] = r.feasible;
    results["typeii_branch"] = r.branch == TypeIIBranch::m2_route ? "m2-route"
                               : r.branch == TypeIIBranch::m1_fifth_power_route
                                   ? "m1-fifth-power-route"
                                   : "none";
  }
  report["results"] = results;
  emit_report(report, opts.resolved_format(), opts.out);
  return all_pass ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"verification and experimentation toolkit for almost primes in short intervals"};
  app.require_subcommand(1);

  CommonOpts opts;

  // omega
  std::string u_list = "2,3,4";
  double u_max = 20.0, omega_step = 1e-4;
  CLI::App* omega_cmd = app.add_subcommand("omega", "Evaluate the Buchstab function");
  omega_cmd->add_option("--u", u_list, "Comma-separated u values");
  omega_cmd->add_option("--u-max", u_max, "Table upper end");
  omega_cmd->add_option("--step", omega_step, "Grid step");
  add_common(omega_cmd, opts);

  // integrals
  double eps = 0.0, tol = 1e-4;
  std::uint64_t i4_points = 0, i4_seed = 0x41f4b4d1u;
  CLI::App* integrals_cmd =
      app.add_subcommand("integrals", "Deficiency integrals and positivity margin");
  integrals_cmd->add_option("--eps", eps, "Epsilon in the integral limits");
  integrals_cmd->add_option("--tol", tol, "Absolute tolerance for I2");
  integrals_cmd->add_option("--i4-points", i4_points, "Sample budget (0 = from tol)");
  integrals_cmd->add_option("--i4-seed", i4_seed, "Stratified sampling seed");
  add_common(integrals_cmd, opts);

  // minorant-scan / count-e2 / count-e3 / variance
  std::uint64_t X = 1000000;
  double m_eps = 0.01, m_a = 1.1, m_c = 2.1;
  CLI::App* scan_cmd = app.add_subcommand("minorant-scan", "Exhaustive minorant bounds scan");
  scan_cmd->add_option("--X", X, "Ambient scale")->required();
  scan_cmd->add_option("--eps", m_eps, "Epsilon");
  scan_cmd->add_option("--a", m_a, "P1 exponent");
  scan_cmd->add_option("--c", m_c, "Interval exponent");
  add_common(scan_cmd, opts);

  std::uint64_t e2_X = 100000000, e2_sample = 10000;
  double e2_eps = 0.01, e2_a = 1.1, e2_c = 2.1;
  CLI::App* e2_cmd = app.add_subcommand("count-e2", "Two-prime products per short interval");
  e2_cmd->add_option("--X", e2_X, "Ambient scale")->required();
  e2_cmd->add_option("--eps", e2_eps, "Epsilon");
  e2_cmd->add_option("--a", e2_a, "P1 exponent");
  e2_cmd->add_option("--c", e2_c, "Interval exponent");
  e2_cmd->add_option("--sample", e2_sample, "Number of sampled x");
  add_common(e2_cmd, opts);

  std::uint64_t e3_lo = 1000000, e3_hi = 100000000, e3_grid = 1000;
  double e3_exp = 1.55;
  CLI::App* e3_cmd = app.add_subcommand("count-e3", "Three-prime products in all intervals");
  e3_cmd->add_option("--x-lo", e3_lo, "Grid start");
  e3_cmd->add_option("--x-hi", e3_hi, "Grid end");
  e3_cmd->add_option("--grid", e3_grid, "Geometric grid points");
  e3_cmd->add_option("--exponent", e3_exp, "Log-power of the window length");
  add_common(e3_cmd, opts);

  std::uint64_t v_X = 1000000, v_sample = 1000;
  double v_eps = 0.01, v_a = 1.1, v_c = 2.1;
  CLI::App* var_cmd = app.add_subcommand("variance", "Window mean-square deviation");
  var_cmd->add_option("--X", v_X, "Ambient scale")->required();
  var_cmd->add_option("--eps", v_eps, "Epsilon");
  var_cmd->add_option("--a", v_a, "P1 exponent");
  var_cmd->add_option("--c", v_c, "Interval exponent");
  var_cmd->add_option("--sample", v_sample, "Grid size");
  add_common(var_cmd, opts);

  // dirichlet audits
  std::uint64_t mvt_count = 100, audit_seed = 0;
  CLI::App* mvt_cmd = app.add_subcommand("mvt", "Mean value theorem audits");
  mvt_cmd->add_option("--count", mvt_count, "Family size");
  mvt_cmd->add_option("--audit-seed", audit_seed, "Override fixture seed");
  add_common(mvt_cmd, opts);

  std::uint64_t hb_count = 20, hb_seed = 0;
  CLI::App* hb_cmd = app.add_subcommand("hb-check", "Sparse mean value bracket audit");
  hb_cmd->add_option("--count", hb_count, "Family size");
  hb_cmd->add_option("--audit-seed", hb_seed, "Override fixture seed");
  add_common(hb_cmd, opts);

  std::uint64_t lv_N = 1000;
  double lv_T = 10000.0, lv_sigma = 0.2, lv_divide = 1.0;
  CLI::App* lv_cmd = app.add_subcommand("large-values", "Grid measure of large values");
  lv_cmd->add_option("--N", lv_N, "Dyadic support start");
  lv_cmd->add_option("--T", lv_T, "Range half-length");
  lv_cmd->add_option("--sigma", lv_sigma, "Threshold exponent");
  lv_cmd->add_option("--step-divide", lv_divide, "Refine step by this factor");
  add_common(lv_cmd, opts);

  std::string tw_which = "watt";
  std::uint64_t tw_count = 20, tw_seed = 0;
  CLI::App* tw_cmd = app.add_subcommand("twisted-moment", "Twisted fourth moment audit");
  tw_cmd->add_option("--which", tw_which, "watt or deshouillers-iwaniec");
  tw_cmd->add_option("--count", tw_count, "Family size");
  tw_cmd->add_option("--audit-seed", tw_seed, "Override fixture seed");
  add_common(tw_cmd, opts);

  // exponents
  bool check_headline = false;
  std::vector<std::string> cgen_args, typeii_args;
  CLI::App* exp_cmd = app.add_subcommand("exponents", "Exact rational exponent certificates");
  exp_cmd->add_flag("--check-headline", check_headline, "Verify the headline constants");
  exp_cmd->add_option("--cgen", cgen_args, "theta sigma eps")->expected(3);
  exp_cmd->add_option("--typeii", typeii_args, "sigma1 sigma2 theta a eps")->expected(5);
  add_common(exp_cmd, opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  set_max_threads(opts.threads);

  try {
    if (app.got_subcommand(omega_cmd)) return cmd_omega(opts, u_list, u_max, omega_step);
    if (app.got_subcommand(integrals_cmd))
      return cmd_integrals(opts, eps, tol, i4_points, i4_seed);
    if (app.got_subcommand(scan_cmd)) return cmd_minorant_scan(opts, X, m_eps, m_a, m_c);
    if (app.got_subcommand(e2_cmd))
      return cmd_count_e2(opts, e2_X, e2_eps, e2_a, e2_c, e2_sample);
    if (app.got_subcommand(e3_cmd)) return cmd_count_e3(opts, e3_lo, e3_hi, e3_grid, e3_exp);
    if (app.got_subcommand(var_cmd))
      return cmd_variance(opts, v_X, v_eps, v_a, v_c, v_sample);
    if (app.got_subcommand(mvt_cmd)) return cmd_mvt(opts, mvt_count, audit_seed);
    if (app.got_subcommand(hb_cmd)) return cmd_hb_check(opts, hb_count, hb_seed);
    if (app.got_subcommand(lv_cmd))
      return cmd_large_values(opts, lv_N, lv_T, lv_sigma, lv_divide);
    if (app.got_subcommand(tw_cmd)) return cmd_twisted(opts, tw_which, tw_count, tw_seed);
    if (app.got_subcommand(exp_cmd))
      return cmd_exponents(opts, check_headline, cgen_args, typeii_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const convergence_failure& e) {
    std::cerr << "did not converge: " << e.what() << " (best value " << e.best_value
              << " +- " << e.error_estimate << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "usage error: no subcommand\n";
  return 2;
}

} // namespace aplab
