#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace deltacasimir::cli {

namespace {

// Opens --out or falls back to the given stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, i / double(n - 1));
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Accumulates a check; a non-converged quadrature fails it regardless of
// the deviation.
struct Check {
  std::string name;
  double tol;
  double dev = 0.0;
  bool ok = true;

  void observe(double d) { dev = std::max(dev, d); }
  void require(bool condition) { ok = ok && condition; }
  CheckResult finish(const std::optional<double>& threshold) const {
    const double t = threshold.value_or(tol);
    return {name, dev, t, ok && dev <= t};
  }
};

}  // namespace

std::vector<CheckResult> run_checks(const RunConfig& cfg) {
  const quad::QuadratureConfig& qc = cfg.quad;
  std::vector<CheckResult> out;

  {
    // deviation = number of grid points outside 1/(1+rho) < E < 1/rho
    Check c{"scaled_e1_bounds", 0.0};
    int violations = 0;
    for (double rho : log_grid(1e-4, 1e6, 41)) {
      const double e = scaled_e1(rho);
      if (!(1.0 / (1.0 + rho) < e && e < 1.0 / rho)) ++violations;
    }
    c.observe(violations);
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"scaled_e1_ode", 1e-6};
    for (double rho : log_grid(0.1, 100.0, 25)) {
      const double h = 1e-4 * rho;
      const double fd = (scaled_e1(rho + h) - scaled_e1(rho - h)) / (2.0 * h);
      c.observe(rel(fd, scaled_e1(rho) - 1.0 / rho));
    }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"scaled_e1_oracle", 1e-10};
    for (double rho : log_grid(1e-2, 1e2, 20)) {
      quad::QuadratureConfig q = qc;
      q.scale = 1.0 / rho;
      const auto r = quad::integrate_semi_infinite([rho](double v) { return std::exp(-rho * v) / (1.0 + v); }, q);
      c.require(r.converged);
      c.observe(std::abs(r.value - scaled_e1(rho)));
    }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"identity_split", 1e-10};
    for (double rho : log_grid(1e-2, 1e2, 20)) {
      const auto id = identity_split_check(rho, qc);
      c.require(id.quadrature.converged);
      c.observe(std::abs(id.lhs - id.rhs));
    }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"resolvent_identity", 1e-8};
    quad::QuadratureConfig q = qc;
    q.tail_cut_strategy = quad::TailStrategy::explicit_analytic_tail;
    for (double k : {0.5, 1.0, 10.0}) {
      const auto r = resolvent_identity_check(k, q);
      c.require(r.converged);
      c.observe(rel(r.value, k));
    }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"point_equivalence", 1e-8};
    for (double x : {0.1, 0.5, 1.0, 2.0, 10.0})
      for (double gamma : {0.1, 1.0, 10.0}) {
        const auto r = point_density_integral(RadialPoint(x), constants::two_pi_sq / gamma, qc);
        c.require(r.converged);
        c.observe(rel(r.value, point_density_closed(RadialPoint(x), gamma)));
      }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    const double exact = 1.0 / (8.0 * constants::pi * constants::pi);
    Check closed{"rho_one_closed", 1e-12};
    closed.observe(rel(point_density_closed(RadialPoint(1.0), 2.0), exact));
    out.push_back(closed.finish(cfg.threshold));
    Check integral{"rho_one_integral", 1e-8};
    const auto r = point_density_integral(RadialPoint(1.0), constants::pi * constants::pi, qc);
    integral.require(r.converged);
    integral.observe(rel(r.value, exact));
    out.push_back(integral.finish(cfg.threshold));
  }
  {
    Check c{"scaling_law", 1e-10};
    for (double x : {0.3, 1.0, 4.0})
      for (double gamma : {0.2, 1.0, 5.0})
        for (double s : {0.5, 2.0, 7.0}) {
          const double base = point_density_closed(RadialPoint(x), gamma);
          const double scaled = point_density_closed(RadialPoint(s * x), s * gamma);
          c.observe(rel(scaled * std::pow(s, 4), base));
        }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"coupling_roundtrip", 1e-15};
    for (double v : log_grid(1e-3, 1e3, 31)) {
      const Coupling a = Coupling::alpha(v);
      const double back = to_ziemian_alpha(Coupling::alpha_a(to_albeverio_alpha(Coupling::gamma(to_gamma(a)))));
      c.observe(rel(back, v));
      const Coupling g = Coupling::gamma(v);
      c.observe(rel(to_ziemian_alpha(Coupling::alpha_a(to_albeverio_alpha(g))), to_ziemian_alpha(g)));
    }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"positivity_monotonicity", 0.0};
    std::mt19937_64 rng(20211);
    std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e2));
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
      const double x = std::exp(u(rng));
      const double alpha = std::exp(u(rng));
      const auto e = point_density_integral(RadialPoint(x), alpha, qc);
      const auto e_alpha = point_density_integral(RadialPoint(x), alpha * 1.05, qc);
      const auto e_x = point_density_integral(RadialPoint(x * 1.05), alpha, qc);
      c.require(e.converged && e_alpha.converged && e_x.converged);
      const double closed = point_density_closed(RadialPoint(x), constants::two_pi_sq / alpha);
      if (!(e.value > 0.0 && closed > 0.0 && e_alpha.value < e.value && e_x.value < e.value)) ++violations;
    }
    c.observe(violations);
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"t_lambda_limit", 1e-10};
    for (auto kind : {ShapeKind::trivial, ShapeKind::ball, ShapeKind::gaussian}) {
      const ShapeFunction shape = builtin_shape(kind, 1.0);
      for (double r : {0.01, 1.0, 30.0}) {
        const auto t = t_lambda(r, 1.0, shape, 0.0, qc);
        c.require(t.converged);
        c.observe(rel(t.value, t_zero(r, 1.0)));
      }
    }
    out.push_back(c.finish(cfg.threshold));
  }
  {
    Check c{"point_limit", 5e-4};
    const auto rows =
        convergence_study(RadialPoint(1.0), constants::two_pi_sq, ball_shape(1.0), {0.5, 0.1, 0.01, 0.001}, qc);
    for (const auto& r : rows) c.require(r.converged);
    c.require(errors_decreasing(rows));
    c.observe(rows.back().abs_error / rows.back().point_limit);
    out.push_back(c.finish(cfg.threshold));
  }
  return out;
}

std::string format_check(const CheckResult& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "CHECK %-24s max_dev=%.3e tol=%.3e %s", c.name.c_str(), c.max_dev, c.tol,
                c.pass ? "PASS" : "FAIL");
  return buf;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<double> radii;
  try {
    radii = radius_grid(cfg.rmin, cfg.rmax, cfg.rcount, cfg.rscale);
  } catch (const std::domain_error& e) {
    err << "profile: " << e.what() << '\n';
    return kExitUsage;
  }
  const Coupling coupling = cfg.coupling.value_or(Coupling::gamma(1.0));
  const auto rows = compare_point_forms(coupling, radii, cfg.quad);
  Output sink(cfg.out, out);
  write_csv(sink.get(), rows);
  for (const auto& r : rows) {
    if (!r.converged) {
      err << "profile: quadrature did not converge at radius " << format_real(r.radius) << '\n';
      return kExitNumerical;
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  bool all = true;
  for (const auto& c : run_checks(cfg)) {
    out << format_check(c) << '\n';
    all = all && c.pass;
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Coupling coupling = cfg.coupling.value_or(Coupling::gamma(1.0));
  std::vector<ConvergenceRow> rows;
  try {
    const RadialPoint x(cfg.radius);
    rows = convergence_study(x, to_ziemian_alpha(coupling), builtin_shape(cfg.shape, cfg.shape_param), cfg.lambdas,
                             cfg.quad, cfg.use_table);
  } catch (const std::domain_error& e) {
    err << "convergence: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "convergence: " << e.what() << '\n';
    return kExitUsage;
  }
  Output sink(cfg.out, out);
  write_csv(sink.get(), rows);
  for (const auto& r : rows) {
    if (!r.converged) {
      err << "convergence: quadrature did not converge at lambda " << format_real(r.lambda) << '\n';
      return kExitNumerical;
    }
  }
  if (!errors_decreasing(rows)) {
    err << "convergence: abs_error column is not decreasing\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_convert(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.coupling) {
    err << "convert: one of --gamma, --alpha, --alpha-a is required\n";
    return kExitUsage;
  }
  const Coupling& c = *cfg.coupling;
  out << "alpha   = " << format_real(to_ziemian_alpha(c)) << '\n'
      << "gamma   = " << format_real(to_gamma(c)) << '\n'
      << "alpha_A = " << format_real(to_albeverio_alpha(c)) << '\n';
  return kExitOk;
}

namespace {

struct CouplingFlags {
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<double> alpha_a;
};

void add_coupling(CLI::App* sub, CouplingFlags& f) {
  auto* g = sub->add_option("--gamma", f.gamma, "coupling gamma (length)");
  auto* a = sub->add_option("--alpha", f.alpha, "coupling alpha (1/length)");
  auto* aa = sub->add_option("--alpha-a", f.alpha_a, "coupling alpha_A (1/length)");
  g->excludes(a)->excludes(aa);
  a->excludes(aa);
}

void add_tolerances(CLI::App* sub, quad::QuadratureConfig& q) {
  sub->add_option("--abs-tol", q.abs_tol, "quadrature absolute tolerance")->capture_default_str();
  sub->add_option("--rel-tol", q.rel_tol, "quadrature relative tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vacuum energy density near a delta-like impurity", "deltacasimir"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with defaults (subcommand keys as <command>.<flag>)");

  RunConfig cfg;
  CouplingFlags coupling;
  std::string rscale = "log";
  std::string shape = "ball";

  auto* profile = app.add_subcommand("profile", "radial profile of both point-impurity forms as CSV");
  add_coupling(profile, coupling);
  profile->add_option("--rmin", cfg.rmin, "smallest radius")->capture_default_str();
  profile->add_option("--rmax", cfg.rmax, "largest radius")->capture_default_str();
  profile->add_option("--rcount", cfg.rcount, "number of radii")->capture_default_str();
  profile->add_option("--rscale", rscale, "radius spacing")->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  add_tolerances(profile, cfg.quad);
  profile->add_option("--out", cfg.out, "output CSV path (default: stdout)");

  auto* verify = app.add_subcommand("verify", "run the identity and equivalence checks");
  add_tolerances(verify, cfg.quad);
  verify->add_option("--threshold", cfg.threshold, "override every check threshold");

  auto* convergence = app.add_subcommand("convergence", "extended impurity against the point-like limit as CSV");
  add_coupling(convergence, coupling);
  convergence->add_option("--radius", cfg.radius, "distance |x| from the impurity")->capture_default_str();
  convergence->add_option("--shape", shape, "impurity profile")
      ->check(CLI::IsMember({"trivial", "ball", "gaussian"}))
      ->capture_default_str();
  convergence->add_option("--shape-param", cfg.shape_param, "ball radius or gaussian width")->capture_default_str();
  convergence->add_option("--lambdas", cfg.lambdas, "strictly decreasing scaling parameters")->delimiter(',');
  convergence->add_flag("--table", cfg.use_table, "use the validated t_lambda interpolant");
  add_tolerances(convergence, cfg.quad);
  convergence->add_option("--out", cfg.out, "output CSV path (default: stdout)");

  auto* convert = app.add_subcommand("convert", "print a coupling in all three conventions");
  add_coupling(convert, coupling);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (coupling.gamma) cfg.coupling = Coupling::gamma(*coupling.gamma);
    if (coupling.alpha) cfg.coupling = Coupling::alpha(*coupling.alpha);
    if (coupling.alpha_a) cfg.coupling = Coupling::alpha_a(*coupling.alpha_a);
    cfg.quad.validate();
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  cfg.rscale = rscale == "linear" ? GridScale::linear : GridScale::log;
  cfg.shape = shape == "trivial" ? ShapeKind::trivial : shape == "gaussian" ? ShapeKind::gaussian : ShapeKind::ball;

  try {
    if (profile->parsed()) return cmd_profile(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (convergence->parsed()) return cmd_convergence(cfg, out, err);
    return cmd_convert(cfg, out, err);
  } catch (const quad::NonFiniteSample& e) {
    err << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace deltacasimir::cli
