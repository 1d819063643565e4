#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "deltacasimir/profile.hpp"

using namespace deltacasimir;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("radius grids", "[profile]") {
  const auto lg = radius_grid(0.1, 10.0, 5, GridScale::log);
  REQUIRE(lg.size() == 5);
  CHECK(lg.front() == 0.1);
  CHECK(lg.back() == 10.0);
  CHECK_THAT(lg[2], WithinRel(1.0, 1e-15));
  const auto lin = radius_grid(1.0, 3.0, 3, GridScale::linear);
  CHECK(lin == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(radius_grid(2.0, 1.0, 1, GridScale::log) == std::vector<double>{2.0});
  CHECK_THROWS_AS(radius_grid(0.0, 1.0, 3, GridScale::log), std::domain_error);
  CHECK_THROWS_AS(radius_grid(1.0, 2.0, 0, GridScale::log), std::domain_error);
  CHECK_THROWS_AS(radius_grid(2.0, 1.0, 3, GridScale::log), std::domain_error);
}

TEST_CASE("17 significant digits round-trip", "[profile]") {
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_real(v)) == v);
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("point comparison CSV", "[profile]") {
  const auto rows = compare_point_forms(Coupling::gamma(1.0), radius_grid(0.1, 10.0, 5, GridScale::log));
  std::ostringstream os;
  write_csv(os, rows);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "radius,density_integral,density_closed,abs_diff,quad_error");
  for (const auto& r : rows) {
    CHECK(r.converged);
    CHECK(r.abs_diff <= 1e-8 * r.density_closed);
  }

  std::ostringstream again;
  write_csv(again, compare_point_forms(Coupling::gamma(1.0), radius_grid(0.1, 10.0, 5, GridScale::log)));
  CHECK(again.str() == os.str());
}

TEST_CASE("sampled profiles", "[profile]") {
  const auto radii = radius_grid(1.5, 3.0, 3, GridScale::linear);
  const auto point = sample_profile(Coupling::gamma(1.0), radii);
  CHECK(point.all_converged());
  REQUIRE(point.samples.size() == 3);
  CHECK(point.samples[0].density > point.samples[2].density);

  const auto ball = sample_profile(Coupling::gamma(1.0), radii, ball_shape(1.0), 0.01);
  CHECK(ball.all_converged());
  for (std::size_t i = 0; i < 3; ++i)
    CHECK_THAT(ball.samples[i].density, WithinRel(point.samples[i].density, 2e-2));

  std::ostringstream os;
  write_csv(os, point);
  CHECK(lines(os.str()).front() == "radius,density,error_estimate");
  CHECK_THROWS_AS(sample_profile(Coupling::gamma(1.0), {2.0, 1.0}), std::domain_error);
}

TEST_CASE("convergence CSV", "[profile]") {
  const auto rows = convergence_study(RadialPoint(1.0), 2.0 * M_PI * M_PI, ball_shape(1.0), {0.5, 0.1});
  std::ostringstream os;
  write_csv(os, rows);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "lambda,density_extended,point_limit,abs_error");
  CHECK(ls[1].rfind("0.5,", 0) == 0);
}

TEST_CASE("noise-floor rule for the error column", "[profile]") {
  ConvergenceRow a{0.5, 1.1, 1.0, 0.1, 1e-12, true};
  ConvergenceRow b{0.1, 1.01, 1.0, 0.01, 1e-12, true};
  ConvergenceRow c{0.01, 1.0, 1.0, 1e-14, 1e-12, true};  // at the floor
  CHECK(errors_decreasing({a, b, c}));
  CHECK_FALSE(errors_decreasing({b, a}));
  CHECK(errors_decreasing({c, c, c}));
}
