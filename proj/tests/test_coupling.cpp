#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "deltacasimir/coupling.hpp"

using namespace deltacasimir;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("gamma = 1 gives alpha = 2 pi^2 and alpha_A = 1/(4 pi)", "[coupling]") {
  const Coupling g = Coupling::gamma(1.0);
  CHECK_THAT(to_ziemian_alpha(g), WithinRel(2.0 * pi * pi, 1e-15));
  CHECK_THAT(to_ziemian_alpha(g), WithinRel(19.7392088021787, 1e-13));
  CHECK_THAT(to_albeverio_alpha(g), WithinRel(1.0 / (4.0 * pi), 1e-15));
  CHECK_THAT(to_albeverio_alpha(g), WithinRel(0.0795774715459477, 1e-13));
  // 8 pi^3 / (4 pi) = 2 pi^2
  CHECK_THAT(8.0 * pi * pi * pi * to_albeverio_alpha(g), WithinRel(to_ziemian_alpha(g), 1e-15));
}

TEST_CASE("alpha_A = 1 gives alpha = 8 pi^3", "[coupling]") {
  CHECK_THAT(to_ziemian_alpha(Coupling::alpha_a(1.0)), WithinRel(248.050213442399, 1e-13));
  CHECK_THAT(to_albeverio_alpha(Coupling::alpha(8.0 * pi * pi * pi)), WithinRel(1.0, 1e-15));
}

TEST_CASE("identity conversions", "[coupling]") {
  CHECK(to_ziemian_alpha(Coupling::alpha(3.5)) == 3.5);
  CHECK(to_gamma(Coupling::gamma(3.5)) == 3.5);
  CHECK(to_albeverio_alpha(Coupling::alpha_a(3.5)) == 3.5);
  CHECK(convert(Coupling::gamma(2.0), Convention::alpha).convention() == Convention::alpha);
}

TEST_CASE("round trips and route agreement", "[coupling][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(std::log(1e-6), std::log(1e6));
  for (int i = 0; i < 1000; ++i) {
    const double v = std::exp(lg(rng));
    // alpha -> gamma -> alpha_A -> alpha
    const double back = to_ziemian_alpha(Coupling::alpha_a(to_albeverio_alpha(Coupling::gamma(to_gamma(Coupling::alpha(v))))));
    CHECK_THAT(back, WithinRel(v, 1e-15));
    // gamma -> alpha directly and via alpha_A
    const Coupling g = Coupling::gamma(v);
    CHECK_THAT(to_ziemian_alpha(Coupling::alpha_a(to_albeverio_alpha(g))), WithinRel(to_ziemian_alpha(g), 1e-15));
    // every convention chain
    for (auto from : {Convention::alpha, Convention::gamma, Convention::alpha_a})
      for (auto via : {Convention::alpha, Convention::gamma, Convention::alpha_a}) {
        const Coupling c(from, v);
        CHECK_THAT(convert(convert(c, via), from).value(), WithinRel(v, 1e-15));
      }
  }
}

TEST_CASE("coupling values must be positive", "[coupling]") {
  CHECK_THROWS_AS(Coupling::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(Coupling::alpha(-1.0), std::domain_error);
  CHECK_THROWS_AS(Coupling::alpha_a(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(Coupling::gamma(HUGE_VAL), std::domain_error);
}
