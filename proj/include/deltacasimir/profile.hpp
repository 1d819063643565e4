#pragma once

// Sampled radial profiles, point-limit convergence tables and their CSV
// serialisation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltacasimir/coupling.hpp"
#include "deltacasimir/energy_density.hpp"

namespace deltacasimir {

enum class GridScale { linear, log };

/// `count` radii from rmin to rmax inclusive; a single point when count == 1.
inline std::vector<double> radius_grid(double rmin, double rmax, std::size_t count, GridScale scale) {
  if (!(rmin > 0.0) || !std::isfinite(rmin)) throw std::domain_error("radius grid: rmin must be > 0");
  if (count < 1) throw std::domain_error("radius grid: count must be >= 1");
  if (count == 1) return {rmin};
  if (!(rmax > rmin) || !std::isfinite(rmax)) throw std::domain_error("radius grid: rmax must exceed rmin");
  std::vector<double> radii(count);
  const double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / n;
    radii[i] = scale == GridScale::log ? rmin * std::pow(rmax / rmin, f) : rmin + (rmax - rmin) * f;
  }
  radii.back() = rmax;
  return radii;
}

/// Round-trip decimal (17 significant digits).
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ProfileSample {
  double radius = 0.0;
  double density = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

struct EnergyDensityProfile {
  Coupling coupling = Coupling::gamma(1.0);
  std::optional<ShapeFunction> shape;  // empty: point impurity
  double lambda = 0.0;
  std::vector<ProfileSample> samples;

  bool all_converged() const {
    for (const auto& s : samples)
      if (!s.converged) return false;
    return true;
  }
};

/// Samples the point-impurity density (integral form) or, when a shape and
/// lambda > 0 are given, the extended density. Radii must be strictly
/// increasing.
inline EnergyDensityProfile sample_profile(const Coupling& coupling, const std::vector<double>& radii,
                                           std::optional<ShapeFunction> shape = std::nullopt, double lambda = 0.0,
                                           const QuadratureConfig& cfg = {}) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw std::domain_error("profile radii must be strictly increasing");
  EnergyDensityProfile profile{coupling, shape, lambda, {}};
  const double alpha = to_ziemian_alpha(coupling);
  profile.samples.reserve(radii.size());
  for (double r : radii) {
    const RadialPoint x(r);
    const IntegrationResult res = (shape && lambda > 0.0) ? extended_density(x, alpha, *shape, lambda, cfg)
                                                          : point_density_integral(x, alpha, cfg);
    profile.samples.push_back({r, res.value, res.error_estimate, res.converged});
  }
  return profile;
}

inline void write_csv(std::ostream& os, const EnergyDensityProfile& profile) {
  os << "radius,density,error_estimate\n";
  for (const auto& s : profile.samples)
    os << format_real(s.radius) << ',' << format_real(s.density) << ',' << format_real(s.error_estimate) << '\n';
}

/// One row of the point-impurity comparison between the integral and the
/// closed form.
struct PointComparisonRow {
  double radius = 0.0;
  double density_integral = 0.0;
  double density_closed = 0.0;
  double abs_diff = 0.0;
  double quad_error = 0.0;
  bool converged = true;
};

inline std::vector<PointComparisonRow> compare_point_forms(const Coupling& coupling, const std::vector<double>& radii,
                                                           const QuadratureConfig& cfg = {}) {
  const double alpha = to_ziemian_alpha(coupling);
  const double gamma = to_gamma(coupling);
  std::vector<PointComparisonRow> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    const RadialPoint x(r);
    const IntegrationResult integral = point_density_integral(x, alpha, cfg);
    const double closed = point_density_closed(x, gamma);
    rows.push_back({r, integral.value, closed, std::abs(integral.value - closed), integral.error_estimate,
                    integral.converged});
  }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<PointComparisonRow>& rows) {
  os << "radius,density_integral,density_closed,abs_diff,quad_error\n";
  for (const auto& r : rows)
    os << format_real(r.radius) << ',' << format_real(r.density_integral) << ',' << format_real(r.density_closed)
       << ',' << format_real(r.abs_diff) << ',' << format_real(r.quad_error) << '\n';
}

struct ConvergenceRow {
  double lambda = 0.0;
  double density = 0.0;
  double point_limit = 0.0;
  double abs_error = 0.0;
  double quad_error = 0.0;
  bool converged = true;
};

/// Extended density at each lambda against the point-like closed form with
/// gamma = 2 pi^2 / alpha. Every lambda is checked against the extended
/// density precondition before any work is done.
inline std::vector<ConvergenceRow> convergence_study(RadialPoint x, double alpha, const ShapeFunction& shape,
                                                     const std::vector<double>& lambdas,
                                                     const QuadratureConfig& cfg = {}, bool use_table = false) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    detail::check_extended_preconditions(x, alpha, shape, lambdas[i]);
    if (i > 0 && !(lambdas[i] < lambdas[i - 1]))
      throw std::invalid_argument("convergence_study: lambdas must be strictly decreasing");
  }
  std::vector<ConvergenceRow> rows;
  if (lambdas.empty()) return rows;

  const double point = point_density_closed(x, Coupling::alpha(alpha));
  std::optional<TLambdaTable> table;
  QuadratureConfig run_cfg = cfg;
  if (use_table) {
    table.emplace(shape);
    // The interpolant bounds the attainable relative accuracy.
    run_cfg.rel_tol = std::max(cfg.rel_tol, 10.0 * table->max_validated_error());
  }
  for (double lambda : lambdas) {
    const IntegrationResult res = table ? extended_density(x, alpha, *table, lambda, run_cfg)
                                        : extended_density(x, alpha, shape, lambda, run_cfg);
    rows.push_back({lambda, res.value, point, std::abs(res.value - point), res.error_estimate, res.converged});
  }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "lambda,density_extended,point_limit,abs_error\n";
  for (const auto& r : rows)
    os << format_real(r.lambda) << ',' << format_real(r.density) << ',' << format_real(r.point_limit) << ','
       << format_real(r.abs_error) << '\n';
}

/// True when abs_error decreases strictly from row to row. Rows whose error
/// is already at the numerical noise floor (quadrature error plus 1e-12
/// relative) count as zero.
inline bool errors_decreasing(const std::vector<ConvergenceRow>& rows) {
  auto resolved = [](const ConvergenceRow& r) {
    const double floor = r.quad_error + 1e-12 * std::abs(r.point_limit);
    return r.abs_error > floor ? r.abs_error : 0.0;
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double prev = resolved(rows[i - 1]);
    const double cur = resolved(rows[i]);
    if (cur == 0.0) continue;
    if (!(cur < prev)) return false;
  }
  return true;
}

}  // namespace deltacasimir
