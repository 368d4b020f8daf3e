// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "fkgs/grid.hpp"

using namespace fkgs;
using Catch::Approx;

TEST_CASE("1D grid mesh quantities") {
  const GridSpec g = make_grid({-20.0, 20.0}, 128);
  REQUIRE(g.dim() == 1);
  REQUIRE(g.size() == 128);
  CHECK(g.axis(0).h == Approx(0.3125).epsilon(0));
  CHECK(g.axis(0).mu == Approx(std::numbers::pi / 20.0).epsilon(1e-15));
  CHECK(g.node(0, 0) == Approx(-20.0));
  CHECK(g.node(0, 64) == Approx(0.0).margin(1e-13));
}

TEST_CASE("2D grid mesh quantities") {
  const double tp = 2.0 * std::numbers::pi;
  const GridSpec g = make_grid({0.0, tp}, 16, {0.0, tp}, 16);
  REQUIRE(g.dim() == 2);
  REQUIRE(g.size() == 256);
  CHECK(g.axis(0).h == Approx(std::numbers::pi / 8.0));
  CHECK(g.axis(0).mu == Approx(1.0));
  CHECK(g.index(3, 5) == 3 * 16 + 5);
}

TEST_CASE("nodes exclude the right endpoint") {
  const GridSpec g = make_grid({0.0, 1.0}, 4);
  CHECK(g.node(0, 0) == 0.0);
  CHECK(g.node(0, 1) == 0.25);
  CHECK(g.node(0, 2) == 0.5);
  CHECK(g.node(0, 3) == 0.75);
  CHECK(g.axis(0).h * g.axis(0).n == Approx(1.0).epsilon(0));
}

TEST_CASE("grid construction rejects bad input") {
  CHECK_THROWS_AS(make_grid({0.0, 1.0}, 5), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({0.0, 1.0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({1.0, 1.0}, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid({2.0, 1.0}, 8), std::invalid_argument);
}

TEST_CASE("mode indices follow transform slot order") {
  CHECK(mode_index(0, 8) == 0);
  CHECK(mode_index(3, 8) == 3);
  CHECK(mode_index(4, 8) == -4);
  CHECK(mode_index(7, 8) == -1);
}
