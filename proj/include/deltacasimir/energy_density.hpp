#pragma once

// Renormalised vacuum energy density <T_00>(x) of a massless scalar field
// (conformal parameter 0, natural units) around a single impurity at the
// origin. Sign convention: the density is positive everywhere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltacasimir/coupling.hpp"
#include "deltacasimir/quadrature.hpp"
#include "deltacasimir/shape.hpp"
#include "deltacasimir/special.hpp"

namespace deltacasimir {

using quad::IntegrationResult;
using quad::QuadratureConfig;

/// Distance |x| > 0 from the impurity.
class RadialPoint {
 public:
  explicit RadialPoint(double radius) : radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw std::domain_error("radius must be finite and > 0, got " + std::to_string(radius));
  }
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(what) + " must be finite and > 0, got " + std::to_string(v));
}

inline void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(what) + " must be finite and >= 0, got " + std::to_string(v));
}

// 1 + (1 - rho) E(rho). For large rho the two terms cancel down to ~2/rho,
// so the asymptotic series sum_n (-1)^(n-1) (n-1)! (n+1) rho^-n is used.
inline double closed_form_bracket(double rho) {
  if (rho < 1e3) return 1.0 + (1.0 - rho) * scaled_e1(rho);
  const double inv = 1.0 / rho;
  double factorial = 1.0;  // (n-1)!
  double power = inv;      // rho^-n
  double sum = 0.0;
  for (int n = 1; n <= 12; ++n) {
    const double term = factorial * (n + 1) * power;
    sum += (n % 2 == 1) ? term : -term;
    if (term < 1e-18 * sum) break;
    factorial *= n;
    power *= inv;
  }
  return sum;
}

// One initial panel per decade between the Lorentzian width and the scale
// 1/(lambda L) where ghat(lambda p) starts to fall off, on both sides.
inline std::vector<double> lorentz_shape_breaks(double width, double lambda_l) {
  if (!(lambda_l > 0.0)) return {};
  const double shape_scale = 1.0 / lambda_l;
  const double lo = 0.1 * std::min(width, shape_scale);
  const double hi = 10.0 * std::max(width, shape_scale);
  std::vector<double> pts = quad::decade_breakpoints(lo, hi);
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) pts.push_back(-pts[i]);
  return pts;
}

}  // namespace detail

/// Energy density from the corrected integral representation
///   E = 1/(4|x|^4) int_0^inf (1 + 2|x| r)/(alpha + 2 pi^2 r) e^{-2|x| r} dr.
/// The quadrature scale is set to 1/(2|x|); other config fields are honoured.
inline IntegrationResult point_density_integral(RadialPoint x, double alpha, QuadratureConfig cfg = {}) {
  detail::require_positive(alpha, "alpha");
  const double d = x.radius();
  cfg.scale = 0.5 / d;
  auto f = [d, alpha](double r) {
    return (1.0 + 2.0 * d * r) / (alpha + constants::two_pi_sq * r) * std::exp(-2.0 * d * r);
  };
  IntegrationResult res = quad::integrate_semi_infinite(f, cfg);
  const double prefactor = 1.0 / (4.0 * d * d * d * d);
  res.value *= prefactor;
  res.error_estimate *= prefactor;
  return res;
}

inline IntegrationResult point_density_integral(RadialPoint x, const Coupling& c, QuadratureConfig cfg = {}) {
  return point_density_integral(x, to_ziemian_alpha(c), cfg);
}

/// Closed form 1/(8 pi^2 |x|^4) [1 + (1 - rho) E(rho)], rho = 2|x|/gamma.
inline double point_density_closed(RadialPoint x, double gamma) {
  detail::require_positive(gamma, "gamma");
  const double d = x.radius();
  const double rho = 2.0 * d / gamma;
  return detail::closed_form_bracket(rho) / (8.0 * constants::pi * constants::pi * d * d * d * d);
}

inline double point_density_closed(RadialPoint x, const Coupling& c) {
  return point_density_closed(x, to_gamma(c));
}

/// t_0(ir) = alpha + 2 pi^2 r.
inline double t_zero(double r, double alpha) {
  detail::require_nonnegative(r, "r");
  detail::require_nonnegative(alpha, "alpha");
  return alpha + constants::two_pi_sq * r;
}

/// t_lambda(ir) = alpha + 2 pi int_R r^2/(r^2 + p^2) ghat(lambda p)^2 dp by
/// whole-line quadrature (algebraic substitution, scale r/(1 + lambda L r) with L
/// the profile length scale).
inline IntegrationResult t_lambda(double r, double alpha, const ShapeFunction& shape, double lambda,
                                  QuadratureConfig cfg = {}) {
  detail::require_positive(r, "r");
  detail::require_nonnegative(alpha, "alpha");
  detail::require_nonnegative(lambda, "lambda");
  cfg.tail_cut_strategy = quad::TailStrategy::algebraic_substitution;
  cfg.scale = r / (1.0 + lambda * shape.length_scale * r);
  auto f = [&shape, r, lambda](double p) {
    const double g = shape.real(lambda * p);
    const double q = p / r;  // r^2/(r^2 + p^2) without underflow
    return g * g / (1.0 + q * q);
  };
  IntegrationResult inner = quad::integrate_real_line(f, cfg, detail::lorentz_shape_breaks(r, lambda * shape.length_scale));
  constexpr double two_pi = 2.0 * constants::pi;
  return {alpha + two_pi * inner.value, two_pi * inner.error_estimate, inner.evaluations, inner.converged};
}

/// H_lambda(r, |x|) = sqrt(pi/2) ghat(i lambda r) e^{-|x| r} / |x|.
inline double h_lambda(double r, RadialPoint x, const ShapeFunction& shape, double lambda) {
  detail::require_positive(r, "r");
  detail::require_nonnegative(lambda, "lambda");
  const double d = x.radius();
  const double g = lambda == 0.0 ? 1.0 : shape.imag(lambda * r);
  return std::sqrt(constants::pi / 2.0) * g * std::exp(-d * r) / d;
}

/// Derivative of H_lambda in |x|:
/// -sqrt(pi/2) ghat(i lambda r) (1 + |x| r) e^{-|x| r} / |x|^2.
inline double h_prime_lambda(double r, RadialPoint x, const ShapeFunction& shape, double lambda) {
  detail::require_positive(r, "r");
  detail::require_nonnegative(lambda, "lambda");
  const double d = x.radius();
  const double g = lambda == 0.0 ? 1.0 : shape.imag(lambda * r);
  return -std::sqrt(constants::pi / 2.0) * g * (1.0 + d * r) * std::exp(-d * r) / (d * d);
}

/// Cubic interpolant of J(s) = int_R ghat(s q)^2/(1 + q^2) dq over
/// log-spaced s, so that t_lambda(ir) = alpha + 2 pi r J(lambda r).
///
/// Node density is doubled until the interpolant agrees with direct
/// quadrature at every cell midpoint to `target_rel_error`. Below s_min J is
/// interpolated linearly towards J(0) = pi; above s_max direct quadrature
/// is used.
class TLambdaTable {
 public:
  TLambdaTable(ShapeFunction shape, double s_min = 1e-8, double s_max = 1e3, double target_rel_error = 1e-9,
               QuadratureConfig cfg = {})
      : shape_(std::move(shape)), s_min_(s_min), s_max_(s_max), cfg_(cfg) {
    shape_.validate();
    detail::require_positive(s_min, "s_min");
    if (!(s_max > s_min)) throw std::invalid_argument("TLambdaTable needs s_max > s_min");
    cfg_.rel_tol = std::min(cfg_.rel_tol, 1e-12);
    cfg_.abs_tol = std::min(cfg_.abs_tol, 1e-14);
    build(target_rel_error);
  }

  const ShapeFunction& shape() const noexcept { return shape_; }
  double max_validated_error() const noexcept { return max_error_; }
  std::size_t node_count() const noexcept { return values_.size(); }

  /// Direct quadrature of J(s).
  IntegrationResult direct(double s) const {
    QuadratureConfig c = cfg_;
    c.tail_cut_strategy = quad::TailStrategy::algebraic_substitution;
    c.scale = 1.0 / (1.0 + s * shape_.length_scale);
    auto f = [this, s](double q) {
      const double g = shape_.real(s * q);
      return g * g / (1.0 + q * q);
    };
    return quad::integrate_real_line(f, c, detail::lorentz_shape_breaks(1.0, s * shape_.length_scale));
  }

  double j(double s) const {
    if (s <= 0.0) return constants::pi;
    if (s < s_min_) return constants::pi + (values_.front() - constants::pi) * (s / s_min_);
    if (s > s_max_) return direct(s).value;
    const double pos = (std::log(s) - log_min_) / step_;
    const auto n = static_cast<std::ptrdiff_t>(values_.size());
    auto i0 = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
    i0 = std::clamp<std::ptrdiff_t>(i0, 0, n - 4);
    // Lagrange cubic through nodes i0..i0+3.
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < 4; ++i) {
      double w = 1.0;
      for (std::ptrdiff_t k = 0; k < 4; ++k)
        if (k != i) w *= (pos - static_cast<double>(i0 + k)) / static_cast<double>(i - k);
      acc += w * values_[static_cast<std::size_t>(i0 + i)];
    }
    return acc;
  }

  double t(double r, double alpha, double lambda) const {
    return alpha + 2.0 * constants::pi * r * j(lambda * r);
  }

 private:
  void build(double target) {
    const double decades = std::log10(s_max_ / s_min_);
    log_min_ = std::log(s_min_);
    for (int per_decade = 16; per_decade <= 1024; per_decade *= 2) {
      const auto cells = static_cast<std::size_t>(std::ceil(decades * per_decade));
      step_ = (std::log(s_max_) - log_min_) / static_cast<double>(cells);
      values_.assign(cells + 1, 0.0);
      for (std::size_t i = 0; i <= cells; ++i) values_[i] = direct(std::exp(log_min_ + step_ * i)).value;
      max_error_ = 0.0;
      for (std::size_t i = 0; i < cells; ++i) {
        const double s = std::exp(log_min_ + step_ * (i + 0.5));
        const double exact = direct(s).value;
        max_error_ = std::max(max_error_, std::abs(j(s) - exact) / std::abs(exact));
      }
      if (max_error_ <= target) return;
    }
    throw std::runtime_error("TLambdaTable could not reach the requested interpolation accuracy");
  }

  ShapeFunction shape_;
  double s_min_;
  double s_max_;
  QuadratureConfig cfg_;
  double log_min_ = 0.0;
  double step_ = 1.0;
  double max_error_ = 0.0;
  std::vector<double> values_;
};

namespace detail {

inline void check_extended_preconditions(RadialPoint x, double alpha, const ShapeFunction& shape, double lambda) {
  require_positive(alpha, "alpha");
  require_positive(lambda, "lambda");
  if (!shape.has_imaginary_axis())
    throw std::domain_error("shape '" + shape.label +
                            "' has no imaginary-axis evaluation; extended density undefined");
  if (!(lambda * shape.growth_bound_a < x.radius()))
    throw std::domain_error("extended density diverges: lambda * a = " +
                            std::to_string(lambda * shape.growth_bound_a) + " must be < |x| = " +
                            std::to_string(x.radius()) + " (lambda = " + std::to_string(lambda) + ")");
}

// Outer r-integral of the extended density with a pluggable t_lambda.
template <class TOfR>
IntegrationResult extended_outer(RadialPoint x, const ShapeFunction& shape, double lambda, QuadratureConfig cfg,
                                 const TOfR& t_of_r) {
  const double d = x.radius();
  const double decay = d - lambda * shape.growth_bound_a;
  cfg.scale = 0.5 / decay;
  // (1/2 pi) [H'^2 - r^2 H^2] = (1/4|x|^4) ghat(i lambda r)^2 (1 + 2|x| r) e^{-2|x| r},
  // with ghat e^{-a lambda r} taken from the overflow-free scaled form.
  auto f = [&](double r) {
    const double g = shape.imag_scaled(lambda * r);
    const double numerator = g * g * (1.0 + 2.0 * d * r) * std::exp(-2.0 * decay * r);
    return numerator / t_of_r(r);
  };
  IntegrationResult res = quad::integrate_semi_infinite(f, cfg);
  const double prefactor = 1.0 / (4.0 * d * d * d * d);
  res.value *= prefactor;
  res.error_estimate *= prefactor;
  return res;
}

}  // namespace detail

/// Energy density of the rescaled extended impurity,
///   E(x, lambda) = (1/2 pi) int_0^inf [H'_lambda^2 - r^2 H_lambda^2] / t_lambda(ir) dr,
/// with t_lambda by nested quadrature. Requires lambda * a < |x| where a is
/// the shape's imaginary-axis growth bound; beyond it the integral diverges.
inline IntegrationResult extended_density(RadialPoint x, double alpha, const ShapeFunction& shape, double lambda,
                                          QuadratureConfig cfg = {}) {
  detail::check_extended_preconditions(x, alpha, shape, lambda);
  QuadratureConfig inner_cfg = cfg;
  inner_cfg.rel_tol = cfg.rel_tol / 10.0;
  double inner_rel = 0.0;
  std::size_t inner_evals = 0;
  bool inner_ok = true;
  auto t_of_r = [&](double r) {
    if (r == 0.0) return alpha;
    const IntegrationResult t = t_lambda(r, alpha, shape, lambda, inner_cfg);
    inner_ok = inner_ok && t.converged;
    inner_evals += t.evaluations;
    inner_rel = std::max(inner_rel, t.error_estimate / t.value);
    return t.value;
  };
  IntegrationResult res = detail::extended_outer(x, shape, lambda, cfg, t_of_r);
  res.error_estimate += std::abs(res.value) * inner_rel;
  res.evaluations += inner_evals;
  res.converged = res.converged && inner_ok && res.error_estimate <= cfg.target(res.value);
  return res;
}

/// Same as above, with t_lambda taken from a validated interpolant.
inline IntegrationResult extended_density(RadialPoint x, double alpha, const TLambdaTable& table, double lambda,
                                          QuadratureConfig cfg = {}) {
  detail::check_extended_preconditions(x, alpha, table.shape(), lambda);
  auto t_of_r = [&](double r) { return table.t(r, alpha, lambda); };
  IntegrationResult res = detail::extended_outer(x, table.shape(), lambda, cfg, t_of_r);
  res.error_estimate += std::abs(res.value) * table.max_validated_error();
  res.converged = res.converged && res.error_estimate <= cfg.target(res.value);
  return res;
}

}  // namespace deltacasimir
