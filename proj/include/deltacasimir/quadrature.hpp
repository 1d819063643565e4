#pragma once

// Adaptive Gauss-Kronrod quadrature on finite, semi-infinite and whole-line
// domains. Infinite domains are mapped onto a finite parameter interval by a
// variable substitution and then refined by global bisection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltacasimir::quad {

enum class TailStrategy {
  exponential_substitution,  // double-exponential map, truncated window
  algebraic_substitution,    // r = s u/(1-u), p = s u/(1-u^2)
  explicit_analytic_tail,    // finite cut plus caller-supplied tail integral
};

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  // Maximum number of subintervals kept by the adaptive bisection.
  std::size_t max_refinement = 2000;
  TailStrategy tail_cut_strategy = TailStrategy::exponential_substitution;
  // Characteristic length of the integrand, used by the substitutions.
  double scale = 1.0;

  // Throws std::invalid_argument when the tolerances or caps are unusable.
  void validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !std::isfinite(abs_tol) ||
        !std::isfinite(rel_tol))
      throw std::invalid_argument("quadrature tolerances must be finite and >= 0");
    if (abs_tol == 0.0 && rel_tol == 0.0)
      throw std::invalid_argument("at least one of abs_tol, rel_tol must be > 0");
    if (max_refinement < 1)
      throw std::invalid_argument("max_refinement must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw std::invalid_argument("substitution scale must be finite and > 0");
  }

  double target(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Raised when the integrand returns NaN or an infinity. `point()` is the
/// sample location in the caller's variable (before any substitution).
class NonFiniteSample : public std::runtime_error {
 public:
  NonFiniteSample(double point, double sample)
      : std::runtime_error(describe(point, sample)), point_(point), sample_(sample) {}

  double point() const noexcept { return point_; }
  double sample() const noexcept { return sample_; }

 private:
  static std::string describe(double point, double sample) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << sample << " at x = " << point;
    return os.str();
  }

  double point_;
  double sample_;
};

/// Closed-form integral of the integrand beyond a cut. For semi-infinite
/// domains `tail(cutoff)` is the integral over (cutoff, inf); for the whole
/// line it is the sum over (-inf, -cutoff) and (cutoff, inf).
struct AnalyticTail {
  double cutoff = 0.0;
  std::function<double(double)> tail;
};

namespace detail {

// Kronrod 21-point abscissae and weights with the embedded 10-point Gauss
// rule (QUADPACK qk21). Odd indices of kXgk are the Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980221151, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct WorseFirst {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

// One GK21 panel. `g` must already be the (transformed) integrand.
template <class G>
Segment gk21(const G& g, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 10> lo{};
  std::array<double, 10> hi{};
  const double fc = g(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  double resabs = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    lo[j] = g(center - dx);
    hi[j] = g(center + dx);
    const double pair = lo[j] + hi[j];
    kronrod += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(lo[j]) + std::abs(hi[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

  const double scale = std::abs(half);
  kronrod *= half;
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((kronrod - gauss * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, kronrod, err};
}

struct FiniteOutcome {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

// Global adaptive bisection starting from the panels between consecutive
// `breaks`. `extra_error` is added to the running error budget (used for
// truncation estimates of mapped windows).
template <class G>
FiniteOutcome adapt(const G& g, const std::vector<double>& breaks, const QuadratureConfig& cfg,
                    double extra_error = 0.0) {
  std::priority_queue<Segment, std::vector<Segment>, WorseFirst> heap;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    const Segment first = gk21(g, breaks[i - 1], breaks[i]);
    total += first.value;
    error += first.error;
    heap.push(first);
  }

  bool stuck = false;
  while (error + extra_error > cfg.target(total) && heap.size() < cfg.max_refinement) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval can no longer be split in double precision.
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) <= 1e3 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::abs(worst.a), std::abs(worst.b))) {
      stuck = true;
      break;
    }
    heap.pop();
    const Segment left = gk21(g, worst.a, mid);
    const Segment right = gk21(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to remove drift from the incremental updates.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  total = 0.0;
  error = 0.0;
  for (const Segment& s : segments) {
    total += s.value;
    error += s.error;
  }
  error += extra_error;
  return {total, error, !stuck && error <= cfg.target(total)};
}

template <class G>
FiniteOutcome adapt(const G& g, double a, double b, const QuadratureConfig& cfg, double extra_error = 0.0) {
  return adapt(g, std::vector<double>{a, b}, cfg, extra_error);
}

// Wraps a user integrand evaluated at `x`, multiplies by the Jacobian and
// rejects non-finite samples.
template <class F>
double checked(const F& f, double x, double jacobian, std::size_t& count) {
  // A node rounded onto a mapped endpoint at infinity carries no mass.
  if (std::isinf(x)) return 0.0;
  ++count;
  const double y = f(x);
  if (!std::isfinite(y)) throw NonFiniteSample(x, y);
  if (y == 0.0) return 0.0;
  return y * jacobian;
}

// Half-width of the double-exponential window in t.
inline constexpr double kDeWindow = 4.0;

}  // namespace detail

/// Integrates f over the finite interval [a, b].
template <class F>
IntegrationResult integrate_finite(const F& f, double a, double b, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate_finite needs finite limits");
  std::size_t count = 0;
  if (a == b) return {0.0, 0.0, 0, true};
  auto g = [&](double x) { return detail::checked(f, x, 1.0, count); };
  const auto out = detail::adapt(g, a, b, cfg);
  return {out.value, out.error, count, out.converged};
}

/// Points 10^k (and lo, hi themselves) spanning [lo, hi], for seeding the
/// initial partition with one panel per decade.
inline std::vector<double> decade_breakpoints(double lo, double hi) {
  std::vector<double> pts;
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) return pts;
  pts.push_back(lo);
  for (double k = std::ceil(std::log10(lo)); k < std::log10(hi); k += 1.0) pts.push_back(std::pow(10.0, k));
  pts.push_back(hi);
  return pts;
}

namespace detail {

// Mapped-variable breakpoints: the window ends plus the images of the
// caller's points that fall strictly inside.
template <class Inverse>
std::vector<double> mapped_breaks(double lo, double hi, const std::vector<double>& points, const Inverse& inverse) {
  std::vector<double> breaks{lo, hi};
  for (double x : points) {
    const double t = inverse(x);
    if (std::isfinite(t) && t > lo && t < hi) breaks.push_back(t);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

}  // namespace detail

/// Integrates f over (0, inf) with the configured tail strategy. Optional
/// `breakpoints` (r > 0) seed the initial partition at known feature scales.
/// The explicit-analytic-tail strategy needs the overload taking an
/// AnalyticTail.
template <class F>
IntegrationResult integrate_semi_infinite(const F& f, const QuadratureConfig& cfg,
                                          const std::vector<double>& breakpoints) {
  cfg.validate();
  std::size_t count = 0;
  const double s = cfg.scale;

  switch (cfg.tail_cut_strategy) {
    case TailStrategy::exponential_substitution: {
      constexpr double half_pi = std::numbers::pi / 2.0;
      auto map = [s](double t) { return s * std::exp(half_pi * std::sinh(t)); };
      auto g = [&](double t) {
        const double r = map(t);
        return detail::checked(f, r, r * half_pi * std::cosh(t), count);
      };
      // Tails outside the window, bounded assuming f = O(1) at 0 and
      // f = O(r^-2) at infinity.
      const double w = detail::kDeWindow;
      const double r_lo = map(-w);
      const double r_hi = map(w);
      const double truncation = std::abs(detail::checked(f, r_lo, r_lo, count)) +
                                std::abs(detail::checked(f, r_hi, r_hi, count));
      const auto breaks = detail::mapped_breaks(
          -w, w, breakpoints, [s](double r) { return std::asinh(std::log(r / s) / half_pi); });
      const auto out = detail::adapt(g, breaks, cfg, truncation);
      return {out.value, out.error, count, out.converged};
    }
    case TailStrategy::algebraic_substitution: {
      auto g = [&](double u) {
        const double v = 1.0 - u;
        return detail::checked(f, s * u / v, s / (v * v), count);
      };
      const auto breaks = detail::mapped_breaks(0.0, 1.0, breakpoints, [s](double r) { return r / (s + r); });
      const auto out = detail::adapt(g, breaks, cfg);
      return {out.value, out.error, count, out.converged};
    }
    case TailStrategy::explicit_analytic_tail:
      throw std::invalid_argument("explicit-analytic-tail strategy requires an AnalyticTail");
  }
  throw std::invalid_argument("unknown tail strategy");
}

template <class F>
IntegrationResult integrate_semi_infinite(const F& f, const QuadratureConfig& cfg = {}) {
  return integrate_semi_infinite(f, cfg, std::vector<double>{});
}

/// Integrates f over (0, cutoff) and adds the supplied closed-form tail.
template <class F>
IntegrationResult integrate_semi_infinite(const F& f, const QuadratureConfig& cfg,
                                          const AnalyticTail& tail) {
  if (cfg.tail_cut_strategy != TailStrategy::explicit_analytic_tail)
    return integrate_semi_infinite(f, cfg);
  cfg.validate();
  if (!(tail.cutoff > 0.0) || !std::isfinite(tail.cutoff) || !tail.tail)
    throw std::invalid_argument("analytic tail needs a finite cutoff > 0 and a tail function");
  auto head = integrate_finite(f, 0.0, tail.cutoff, cfg);
  head.value += tail.tail(tail.cutoff);
  head.converged = head.converged && head.error_estimate <= cfg.target(head.value);
  return head;
}

/// Integrates f over the whole real line. The algebraic substitution keeps
/// O(1/p^2) tails smooth in the mapped variable. Optional `breakpoints`
/// seed the initial partition.
template <class F>
IntegrationResult integrate_real_line(const F& f, const QuadratureConfig& cfg,
                                      const std::vector<double>& breakpoints) {
  cfg.validate();
  std::size_t count = 0;
  const double s = cfg.scale;

  switch (cfg.tail_cut_strategy) {
    case TailStrategy::exponential_substitution: {
      constexpr double half_pi = std::numbers::pi / 2.0;
      auto g = [&](double t) {
        const double inner = half_pi * std::sinh(t);
        return detail::checked(f, s * std::sinh(inner), s * std::cosh(inner) * half_pi * std::cosh(t),
                               count);
      };
      const double w = detail::kDeWindow;
      const double p_edge = s * std::sinh(half_pi * std::sinh(w));
      const double truncation = std::abs(detail::checked(f, -p_edge, p_edge, count)) +
                                std::abs(detail::checked(f, p_edge, p_edge, count));
      auto breaks = detail::mapped_breaks(
          -w, w, breakpoints, [s](double p) { return std::asinh(std::asinh(p / s) / half_pi); });
      const auto out = detail::adapt(g, breaks, cfg, truncation);
      return {out.value, out.error, count, out.converged};
    }
    case TailStrategy::algebraic_substitution: {
      auto g = [&](double u) {
        const double v = 1.0 - u * u;
        return detail::checked(f, s * u / v, s * (1.0 + u * u) / (v * v), count);
      };
      // u solving p = s u/(1 - u^2); 0 is always a break so each panel has
      // at most one mapped endpoint.
      std::vector<double> pts = breakpoints;
      pts.push_back(0.0);
      const auto breaks = detail::mapped_breaks(-1.0, 1.0, pts, [s](double p) {
        return p == 0.0 ? 0.0 : (std::sqrt(s * s + 4.0 * p * p) - s) / (2.0 * p);
      });
      const auto out = detail::adapt(g, breaks, cfg);
      return {out.value, out.error, count, out.converged};
    }
    case TailStrategy::explicit_analytic_tail:
      throw std::invalid_argument("explicit-analytic-tail strategy requires an AnalyticTail");
  }
  throw std::invalid_argument("unknown tail strategy");
}

template <class F>
IntegrationResult integrate_real_line(const F& f, const QuadratureConfig& cfg = {}) {
  return integrate_real_line(f, cfg, std::vector<double>{});
}

/// Integrates f over (-cutoff, cutoff) and adds the supplied two-sided tail.
template <class F>
IntegrationResult integrate_real_line(const F& f, const QuadratureConfig& cfg,
                                      const AnalyticTail& tail) {
  if (cfg.tail_cut_strategy != TailStrategy::explicit_analytic_tail)
    return integrate_real_line(f, cfg);
  cfg.validate();
  if (!(tail.cutoff > 0.0) || !std::isfinite(tail.cutoff) || !tail.tail)
    throw std::invalid_argument("analytic tail needs a finite cutoff > 0 and a tail function");
  auto head = integrate_finite(f, -tail.cutoff, tail.cutoff, cfg);
  head.value += tail.tail(tail.cutoff);
  head.converged = head.converged && head.error_estimate <= cfg.target(head.value);
  return head;
}

inline const char* to_string(TailStrategy s) {
  switch (s) {
    case TailStrategy::exponential_substitution: return "exponential-substitution";
    case TailStrategy::algebraic_substitution: return "algebraic-substitution";
    case TailStrategy::explicit_analytic_tail: return "explicit-analytic-tail";
  }
  return "unknown";
}

}  // namespace deltacasimir::quad
