#pragma once

// Impurity strength in the three conventions found in the literature on
// point interactions in three dimensions:
//   alpha   (1/length)  coupling entering t_0(ir) = alpha + 2 pi^2 r
//   gamma   (length)    coupling of the zeta-regularised stress tensor
//   alpha_A (1/length)  textbook parametrisation of the point interaction
// related by alpha = 2 pi^2 / gamma = 8 pi^3 alpha_A, alpha_A = 1/(4 pi gamma).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace deltacasimir {

enum class Convention { alpha, gamma, alpha_a };

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi_sq = 2.0 * pi * pi;
inline constexpr double eight_pi_cubed = 8.0 * pi * pi * pi;
inline constexpr double four_pi = 4.0 * pi;
}  // namespace constants

class Coupling {
 public:
  Coupling(Convention convention, double value) : convention_(convention), value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw std::domain_error("coupling value must be finite and > 0, got " + std::to_string(value));
  }

  static Coupling alpha(double v) { return {Convention::alpha, v}; }
  static Coupling gamma(double v) { return {Convention::gamma, v}; }
  static Coupling alpha_a(double v) { return {Convention::alpha_a, v}; }

  Convention convention() const noexcept { return convention_; }
  double value() const noexcept { return value_; }

 private:
  Convention convention_;
  double value_;
};

inline double to_ziemian_alpha(const Coupling& c) {
  switch (c.convention()) {
    case Convention::alpha: return c.value();
    case Convention::gamma: return constants::two_pi_sq / c.value();
    case Convention::alpha_a: return constants::eight_pi_cubed * c.value();
  }
  throw std::logic_error("unknown convention");
}

inline double to_gamma(const Coupling& c) {
  switch (c.convention()) {
    case Convention::alpha: return constants::two_pi_sq / c.value();
    case Convention::gamma: return c.value();
    case Convention::alpha_a: return 1.0 / (constants::four_pi * c.value());
  }
  throw std::logic_error("unknown convention");
}

inline double to_albeverio_alpha(const Coupling& c) {
  switch (c.convention()) {
    case Convention::alpha: return c.value() / constants::eight_pi_cubed;
    case Convention::gamma: return 1.0 / (constants::four_pi * c.value());
    case Convention::alpha_a: return c.value();
  }
  throw std::logic_error("unknown convention");
}

inline Coupling convert(const Coupling& c, Convention target) {
  switch (target) {
    case Convention::alpha: return Coupling::alpha(to_ziemian_alpha(c));
    case Convention::gamma: return Coupling::gamma(to_gamma(c));
    case Convention::alpha_a: return Coupling::alpha_a(to_albeverio_alpha(c));
  }
  throw std::logic_error("unknown convention");
}

inline const char* to_string(Convention c) {
  switch (c) {
    case Convention::alpha: return "alpha";
    case Convention::gamma: return "gamma";
    case Convention::alpha_a: return "alpha_A";
  }
  return "unknown";
}

}  // namespace deltacasimir
