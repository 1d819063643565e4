#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "deltacasimir/quadrature.hpp"

using namespace deltacasimir::quad;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

QuadratureConfig with(TailStrategy s) {
  QuadratureConfig c;
  c.tail_cut_strategy = s;
  return c;
}

}  // namespace

TEST_CASE("exponential decay integrates to one with every strategy", "[quadrature]") {
  auto f = [](double r) { return std::exp(-r); };
  for (auto s : {TailStrategy::exponential_substitution, TailStrategy::algebraic_substitution}) {
    const auto r = integrate_semi_infinite(f, with(s));
    CAPTURE(to_string(s));
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(1.0, 1e-12));
    CHECK(r.evaluations > 0);
  }
  const AnalyticTail tail{30.0, [](double cut) { return std::exp(-cut); }};
  const auto r = integrate_semi_infinite(f, with(TailStrategy::explicit_analytic_tail), tail);
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("shifted Lorentzian family gives -pi/2", "[quadrature]") {
  // r^2/(r^2+1) - 1 = -1/(1+r^2)
  auto f = [](double r) { return r * r / (r * r + 1.0) - 1.0; };

  const auto alg = integrate_semi_infinite(f, with(TailStrategy::algebraic_substitution));
  CHECK(alg.converged);
  CHECK_THAT(alg.value, WithinAbs(-pi / 2.0, 1e-10));

  const AnalyticTail tail{16.0, [](double cut) { return -std::atan(1.0 / cut); }};
  const auto cut = integrate_semi_infinite(f, with(TailStrategy::explicit_analytic_tail), tail);
  CHECK(cut.converged);
  CHECK_THAT(cut.value, WithinAbs(-pi / 2.0, 1e-12));

  // The literal difference cancels for r >> 1; the double-exponential map
  // samples far into that region and must report it rather than hide it.
  const auto de = integrate_semi_infinite(f, with(TailStrategy::exponential_substitution));
  CHECK(std::abs(de.value + pi / 2.0) <= 10.0 * de.error_estimate);
}

TEST_CASE("point-impurity integrand at |x| = 1, alpha = 2 pi^2", "[quadrature]") {
  // 4 * energy density; mpmath quadrature of the defining integral.
  constexpr double expected = 0.032355470247687130932;
  auto f = [](double r) { return (1.0 + 2.0 * r) * std::exp(-2.0 * r) / (2.0 * pi * pi + 2.0 * pi * pi * r); };
  for (auto s : {TailStrategy::exponential_substitution, TailStrategy::algebraic_substitution}) {
    const auto r = integrate_semi_infinite(f, with(s));
    CAPTURE(to_string(s));
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(expected, 1e-10));
  }
}

TEST_CASE("whole-line integrals", "[quadrature]") {
  for (auto s : {TailStrategy::algebraic_substitution, TailStrategy::exponential_substitution}) {
    CAPTURE(to_string(s));
    const auto lorentz = integrate_real_line([](double p) { return 1.0 / (1.0 + p * p); }, with(s));
    CHECK(lorentz.converged);
    CHECK_THAT(lorentz.value, WithinRel(pi, 1e-10));

    const auto gauss = integrate_real_line([](double p) { return std::exp(-p * p); }, with(s));
    CHECK(gauss.converged);
    CHECK_THAT(gauss.value, WithinRel(std::sqrt(pi), 1e-10));

    const auto sq = integrate_real_line([](double p) { return 1.0 / ((1.0 + p * p) * (1.0 + p * p)); }, with(s));
    CHECK(sq.converged);
    CHECK_THAT(sq.value, WithinRel(pi / 2.0, 1e-10));
  }

  SECTION("Lorentzian kernel integrates to pi r for several widths") {
    for (double r : {1e-3, 1.0, 250.0}) {
      QuadratureConfig c = with(TailStrategy::algebraic_substitution);
      c.scale = r;
      const auto res = integrate_real_line([r](double p) { return r * r / (r * r + p * p); }, c);
      CHECK(res.converged);
      CHECK_THAT(res.value, WithinRel(pi * r, 1e-10));
    }
  }

  SECTION("explicit tail on the whole line") {
    auto f = [](double p) { return 1.0 / (1.0 + p * p); };
    const AnalyticTail tail{20.0, [](double cut) { return 2.0 * std::atan(1.0 / cut); }};
    const auto res = integrate_real_line(f, with(TailStrategy::explicit_analytic_tail), tail);
    CHECK(res.converged);
    CHECK_THAT(res.value, WithinRel(pi, 1e-12));
  }
}

TEST_CASE("breakpoints expose a feature far from the substitution scale", "[quadrature]") {
  // Unit mass in a narrow bump at p = 1e6 on top of a unit Lorentzian.
  auto f = [](double p) {
    const double z = (p - 1e6) / 1e4;
    return 1.0 / (1.0 + p * p) + std::exp(-z * z) / (1e4 * std::sqrt(pi));
  };
  const QuadratureConfig c = with(TailStrategy::algebraic_substitution);
  const auto res = integrate_real_line(f, c, {9e5, 1e6, 1.1e6});
  CHECK(res.converged);
  CHECK_THAT(res.value, WithinRel(pi + 1.0, 1e-9));
}

TEST_CASE("finite interval", "[quadrature]") {
  const auto r = integrate_finite([](double x) { return x * x * x; }, 1.0, 2.0);
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinRel(15.0 / 4.0, 1e-14));
  CHECK(integrate_finite([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("non-finite samples are reported with their location", "[quadrature]") {
  auto f = [](double r) { return r > 2.0 ? std::nan("") : std::exp(-r); };
  try {
    (void)integrate_semi_infinite(f);
    FAIL("expected NonFiniteSample");
  } catch (const NonFiniteSample& e) {
    CHECK(e.point() > 2.0);
    CHECK(std::isnan(e.sample()));
    CHECK(std::string(e.what()).find("x = ") != std::string::npos);
  }
  CHECK_THROWS_AS(integrate_real_line([](double p) { return p > 0.5 ? HUGE_VAL : 1.0 / (1 + p * p); }),
                  NonFiniteSample);
}

TEST_CASE("unmet tolerance is flagged, not hidden", "[quadrature]") {
  SECTION("refinement cap") {
    QuadratureConfig c;
    c.max_refinement = 1;
    const auto r = integrate_semi_infinite([](double x) { return std::sin(x) * std::exp(-x / 50.0); }, c);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > c.target(r.value));
  }
  SECTION("tolerance below double precision") {
    QuadratureConfig c;
    c.abs_tol = 0.0;
    c.rel_tol = 1e-17;
    const auto r = integrate_semi_infinite([](double x) { return std::exp(-x) / (1.0 + x); }, c);
    CHECK_FALSE(r.converged);
    CHECK_THAT(r.value, WithinRel(0.59634736232319407434, 1e-13));
  }
}

TEST_CASE("config validation", "[quadrature]") {
  QuadratureConfig c;
  c.abs_tol = 0.0;
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.max_refinement = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, c), std::invalid_argument);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, with(TailStrategy::explicit_analytic_tail)),
                  std::invalid_argument);
}

TEST_CASE("converged results satisfy their tolerance", "[quadrature][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    auto f = [a, b](double r) { return (1.0 + b * r) * std::exp(-a * r) / (1.0 + r); };
    const auto res = integrate_semi_infinite(f);
    if (res.converged) CHECK(res.error_estimate <= QuadratureConfig{}.target(res.value));
  }
}

TEST_CASE("linearity within the reported error", "[quadrature][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> rate(0.1, 5.0);
  for (int i = 0; i < 40; ++i) {
    const double a = coef(rng);
    const double b = coef(rng);
    const double k1 = rate(rng);
    const double k2 = rate(rng);
    auto f = [k1](double r) { return std::exp(-k1 * r) / (1.0 + r); };
    auto g = [k2](double r) { return r * r / (r * r + k2 * k2) * std::exp(-r); };
    auto h = [&](double r) { return a * f(r) + b * g(r); };
    const auto rf = integrate_semi_infinite(f);
    const auto rg = integrate_semi_infinite(g);
    const auto rh = integrate_semi_infinite(h);
    const double budget = std::abs(a) * rf.error_estimate + std::abs(b) * rg.error_estimate + rh.error_estimate;
    CHECK(std::abs(rh.value - a * rf.value - b * rg.value) <= budget);
  }
}

TEST_CASE("error estimates are honest on a fixed suite", "[quadrature][property]") {
  struct Case {
    const char* name;
    bool whole_line;
    double (*f)(double);
    double exact;
  };
  const std::vector<Case> suite = {
      {"exp(-r)", false, [](double r) { return std::exp(-r); }, 1.0},
      {"1/(1+r)^2", false, [](double r) { return 1.0 / ((1.0 + r) * (1.0 + r)); }, 1.0},
      {"r exp(-r)", false, [](double r) { return r * std::exp(-r); }, 1.0},
      {"1/(1+r^2)", false, [](double r) { return 1.0 / (1.0 + r * r); }, pi / 2.0},
      {"exp(-r^2)", false, [](double r) { return std::exp(-r * r); }, std::sqrt(pi) / 2.0},
      {"exp(-r)/sqrt(r)", false, [](double r) { return std::exp(-r) / std::sqrt(r); }, std::sqrt(pi)},
      {"r^2 exp(-r)", false, [](double r) { return r * r * std::exp(-r); }, 2.0},
      {"1/(1+r)^3", false, [](double r) { return 1.0 / std::pow(1.0 + r, 3); }, 0.5},
      {"sech^2(p)", true, [](double p) { return 1.0 / (std::cosh(p) * std::cosh(p)); }, 2.0},
      {"1/(1+p^2)", true, [](double p) { return 1.0 / (1.0 + p * p); }, pi},
  };
  for (auto s : {TailStrategy::exponential_substitution, TailStrategy::algebraic_substitution}) {
    for (const auto& c : suite) {
      CAPTURE(c.name, to_string(s));
      const auto r = c.whole_line ? integrate_real_line(c.f, with(s)) : integrate_semi_infinite(c.f, with(s));
      CHECK(std::abs(r.value - c.exact) <= 10.0 * r.error_estimate + 1e-300);
    }
  }
}

TEST_CASE("results are deterministic", "[quadrature]") {
  auto f = [](double r) { return std::exp(-0.3 * r) / (1.0 + r * r); };
  const auto a = integrate_semi_infinite(f);
  const auto b = integrate_semi_infinite(f);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}
