#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace deltacasimir {

namespace detail {

// Below this argument the power series of E1 is used, above it the continued
// fraction for exp(rho) E1(rho).
inline constexpr double kScaledE1Crossover = 1.0;

inline double scaled_e1_series(double rho) {
  // E1(rho) = -gamma - ln(rho) - sum_{n>=1} (-rho)^n / (n n!)
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double term = 1.0;  // (-rho)^n / n!
  double sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    term *= -rho / n;
    const double contribution = term / n;
    sum += contribution;
    if (std::abs(contribution) < eps * std::abs(sum)) break;
  }
  const double e1 = -std::numbers::egamma - std::log(rho) - sum;
  return std::exp(rho) * e1;
}

inline double scaled_e1_continued_fraction(double rho) {
  // exp(rho) E1(rho) = 1/(rho+1 - 1/(rho+3 - 4/(rho+5 - ...))), modified
  // Lentz evaluation. The product is formed directly, never exp(rho)*E1.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = 1e-300;
  double b = rho + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) <= eps) break;
  }
  return h;
}

}  // namespace detail

/// E(rho) = int_0^inf exp(-rho v)/(1+v) dv = exp(rho) E1(rho), for rho > 0.
///
/// Uses the convergent series of E1 for rho <= 1 and the Laguerre continued
/// fraction of the scaled function above. Relative accuracy is near machine
/// precision on [1e-4, 1e6]. Throws std::domain_error for rho <= 0 or NaN,
/// where the integral diverges.
inline double scaled_e1(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("scaled_e1: rho must be > 0 (integral diverges at rho <= 0)");
  if (std::isinf(rho)) return 0.0;
  if (rho <= detail::kScaledE1Crossover) return detail::scaled_e1_series(rho);
  return detail::scaled_e1_continued_fraction(rho);
}

}  // namespace deltacasimir
