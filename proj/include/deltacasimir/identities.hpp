#pragma once

// Numerical checks of the exact identities relating the two point-impurity
// energy densities and the resolvent representation of k.

#include <cmath>
#include <numbers>

#include "deltacasimir/quadrature.hpp"
#include "deltacasimir/special.hpp"

namespace deltacasimir {

struct SplitIdentity {
  double lhs = 0.0;  // quadrature of int_0^inf (1 + rho v)/(1 + v) e^{-rho v} dv
  double rhs = 0.0;  // 1 + (1 - rho) E(rho)
  quad::IntegrationResult quadrature;
};

/// Both sides of
///   int_0^inf (1 + rho v)/(1 + v) e^{-rho v} dv = 1 + (1 - rho) E(rho),
/// which follows from (1 + rho v)/(1 + v) = rho + (1 - rho)/(1 + v).
inline SplitIdentity identity_split_check(double rho, quad::QuadratureConfig cfg = {}) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("identity_split_check: rho must be > 0");
  cfg.scale = 1.0 / rho;
  auto f = [rho](double v) { return (1.0 + rho * v) / (1.0 + v) * std::exp(-rho * v); };
  const auto q = quad::integrate_semi_infinite(f, cfg);
  return {q.value, 1.0 + (1.0 - rho) * scaled_e1(rho), q};
}

/// Default for the resolvent check: the literal integrand cancels badly for
/// r >> k, so it is integrated up to 16k and the remainder added in closed form.
inline quad::QuadratureConfig resolvent_default_config() {
  quad::QuadratureConfig cfg;
  cfg.tail_cut_strategy = quad::TailStrategy::explicit_analytic_tail;
  return cfg;
}

/// Evaluates -(2/pi) int_0^inf [r^2/(r^2 + k^2) - 1] dr, which equals k.
inline quad::IntegrationResult resolvent_identity_check(double k,
                                                        quad::QuadratureConfig cfg = resolvent_default_config()) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("resolvent_identity_check: k must be > 0");
  const double k2 = k * k;
  auto f = [k2](double r) {
    const double r2 = r * r;
    return r2 / (r2 + k2) - 1.0;
  };
  cfg.scale = k;
  // int_R^inf [r^2/(r^2+k^2) - 1] dr = -k atan(k/R)
  const quad::AnalyticTail tail{16.0 * k, [k](double cut) { return -k * std::atan(k / cut); }};
  quad::IntegrationResult res = quad::integrate_semi_infinite(f, cfg, tail);
  constexpr double factor = -2.0 / std::numbers::pi;
  res.value *= factor;
  res.error_estimate *= -factor;
  return res;
}

/// Difference form: k - p = -(2/pi) int_0^inf [r^2/(r^2+k^2) - r^2/(r^2+p^2)] dr,
/// obtained by subtracting the two separate identities.
inline quad::IntegrationResult resolvent_difference(double k, double p,
                                                    quad::QuadratureConfig cfg = resolvent_default_config()) {
  const auto a = resolvent_identity_check(k, cfg);
  const auto b = resolvent_identity_check(p, cfg);
  return {a.value - b.value, a.error_estimate + b.error_estimate, a.evaluations + b.evaluations,
          a.converged && b.converged};
}

}  // namespace deltacasimir
