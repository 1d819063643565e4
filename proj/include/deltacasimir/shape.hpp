#pragma once

// Fourier profiles of an extended impurity. A shape carries its own
// evaluation on the imaginary axis; the library never continues ghat
// analytically by itself.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace deltacasimir {

struct ShapeFunction {
  std::function<double(double)> ghat_real;  // ghat(k), k real
  std::function<double(double)> ghat_imag;  // ghat(i s), s >= 0
  // ghat(i s) * exp(-growth_bound_a * s); bounded for shapes of finite
  // growth. Optional: derived from ghat_imag when empty.
  std::function<double(double)> ghat_imag_scaled;
  double growth_bound_a = 0.0;  // +inf when ghat(i s) grows faster than exponentially
  std::string label;
  // Spatial extent of the profile; ghat(k) varies on |k| ~ 1/length_scale.
  // Zero for a profile that does not vary.
  double length_scale = 0.0;

  bool has_imaginary_axis() const { return std::isfinite(growth_bound_a) && static_cast<bool>(ghat_imag); }

  double real(double k) const { return ghat_real(k); }

  double imag(double s) const {
    if (!has_imaginary_axis())
      throw std::domain_error("shape '" + label + "' cannot be evaluated on the imaginary axis");
    if (!(s >= 0.0)) throw std::domain_error("imaginary-axis argument must be >= 0");
    return ghat_imag(s);
  }

  double imag_scaled(double s) const {
    if (!has_imaginary_axis())
      throw std::domain_error("shape '" + label + "' cannot be evaluated on the imaginary axis");
    if (!(s >= 0.0)) throw std::domain_error("imaginary-axis argument must be >= 0");
    if (ghat_imag_scaled) return ghat_imag_scaled(s);
    return ghat_imag(s) * std::exp(-growth_bound_a * s);
  }

  /// Checks ghat(0) = 1 on both axes and the growth bound.
  void validate() const {
    if (!ghat_real) throw std::invalid_argument("shape '" + label + "' has no real-axis profile");
    if (!(growth_bound_a >= 0.0)) throw std::invalid_argument("growth bound must be >= 0");
    if (!(length_scale >= 0.0) || !std::isfinite(length_scale))
      throw std::invalid_argument("length scale must be finite and >= 0");
    constexpr double tol = 1e-12;
    if (std::abs(ghat_real(0.0) - 1.0) > tol)
      throw std::invalid_argument("shape '" + label + "' violates ghat(0) = 1");
    if (has_imaginary_axis() && std::abs(ghat_imag(0.0) - 1.0) > tol)
      throw std::invalid_argument("shape '" + label + "' violates ghat(i0) = 1");
  }
};

enum class ShapeKind { trivial, ball, gaussian };

namespace detail {

// Below |ka| = 0.5 the closed forms cancel (relative error ~ eps/t^2), so
// the Taylor series 3 sum (+-t^2)^n / ((2n+3)(2n+1)!) is used instead.
// Nine terms reach double precision there.
inline constexpr double kBallSeriesCut = 0.5;

inline double ball_series(double t2) {
  double term = 1.0;  // (t^2)^n / (2n+1)!
  double sum = 1.0 / 3.0;
  for (int n = 1; n <= 9; ++n) {
    term *= t2 / ((2.0 * n) * (2.0 * n + 1.0));
    sum += term / (2.0 * n + 3.0);
  }
  return 3.0 * sum;
}

inline double ball_real(double t) {
  if (std::abs(t) < kBallSeriesCut) return ball_series(-t * t);
  return 3.0 * (std::sin(t) - t * std::cos(t)) / (t * t * t);
}

inline double ball_imag(double t) {
  if (t < kBallSeriesCut) return ball_series(t * t);
  return 3.0 * (t * std::cosh(t) - std::sinh(t)) / (t * t * t);
}

// 3 (t cosh t - sinh t) e^{-t} / t^3 without overflow.
inline double ball_imag_scaled(double t) {
  if (t < kBallSeriesCut) return ball_imag(t) * std::exp(-t);
  const double m = std::exp(-2.0 * t);
  return 1.5 * (t * (1.0 + m) - (1.0 - m)) / (t * t * t);
}

}  // namespace detail

/// ghat = 1 identically; the point-like profile.
inline ShapeFunction trivial_shape() {
  auto one = [](double) { return 1.0; };
  return {one, one, one, 0.0, "trivial", 0.0};
}

/// Uniform ball of radius a: ghat(k) = 3 (sin ka - ka cos ka)/(ka)^3.
inline ShapeFunction ball_shape(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("ball radius must be finite and > 0");
  return {[a](double k) { return detail::ball_real(k * a); },
          [a](double s) { return detail::ball_imag(s * a); },
          [a](double s) { return detail::ball_imag_scaled(s * a); }, a, "ball", a};
}

/// Gaussian ghat(k) = exp(-k^2 w^2 / 2). Grows as exp(s^2 w^2/2) on the
/// imaginary axis, so only real-axis evaluation is offered.
inline ShapeFunction gaussian_shape(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw std::domain_error("gaussian width must be finite and > 0");
  return {[w](double k) { return std::exp(-0.5 * k * k * w * w); }, nullptr, nullptr,
          std::numeric_limits<double>::infinity(), "gaussian", w};
}

inline ShapeFunction builtin_shape(ShapeKind kind, double param = 1.0) {
  switch (kind) {
    case ShapeKind::trivial: return trivial_shape();
    case ShapeKind::ball: return ball_shape(param);
    case ShapeKind::gaussian: return gaussian_shape(param);
  }
  throw std::invalid_argument("unknown shape kind");
}

}  // namespace deltacasimir
