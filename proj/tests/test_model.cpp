// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fkgs/examples.hpp"
#include "fkgs/integrators.hpp"
#include "fkgs/model.hpp"
#include "test_helpers.hpp"

using namespace fkgs;
using Catch::Approx;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

TEST_CASE("initialization splits phi and halves u_t") {
  const GridSpec g = make_grid({-4.0, 4.0}, 16);

  SECTION("zero data gives the zero state") {
    InitialData data;
    data.phi0 = [](const Point&) { return std::complex<double>(0.0, 0.0); };
    data.u0 = [](const Point&) { return 0.0; };
    data.ut0 = [](const Point&) { return 0.0; };
    const State st = initialize(g, data);
    CHECK(inf_norm(st.u) == 0.0);
    CHECK(inf_norm(st.v) == 0.0);
    CHECK(inf_norm(st.p) == 0.0);
    CHECK(inf_norm(st.q) == 0.0);
    CHECK(st.t == 0.0);
  }
  SECTION("u_t is halved into v") {
    InitialData data;
    data.phi0 = [](const Point&) { return std::complex<double>(0.0, 0.0); };
    data.u0 = [](const Point&) { return 0.0; };
    data.ut0 = [](const Point&) { return 2.0; };
    const State st = initialize(g, data);
    for (std::size_t i = 0; i < st.v.size(); ++i) CHECK(st.v[i] == 1.0);
  }
  SECTION("(1+i) Gaussian splits evenly into p and q") {
    const GridSpec g2 = make_grid({-10.0, 10.0}, 32, {-10.0, 10.0}, 32);
    const State st = initialize(g2, pulse_initial_2d());
    for (long jx = 0; jx < 32; ++jx)
      for (long jy = 0; jy < 32; ++jy) {
        const double x = g2.node(0, jx), y = g2.node(1, jy);
        const double env = std::exp(-(x * x + y * y));
        const std::size_t i = g2.index(jx, jy);
        CHECK(st.q[i] == Approx(env).margin(1e-300));
        CHECK(st.p[i] == Approx(env).margin(1e-300));
      }
  }
  SECTION("non-finite samples are rejected") {
    InitialData data;
    data.phi0 = [](const Point&) {
      return std::complex<double>(std::nan(""), 0.0);
    };
    data.u0 = [](const Point&) { return 0.0; };
    data.ut0 = [](const Point&) { return 0.0; };
    CHECK_THROWS_AS(initialize(g, data), std::invalid_argument);
  }
}

TEST_CASE("mass functional") {
  SECTION("zero state") {
    const GridSpec g = make_grid({0.0, 1.0}, 8);
    State st{RealField(g), RealField(g), RealField(g), RealField(g), 0.0};
    CHECK(mass(st) == 0.0);
  }
  SECTION("constant p on the unit box") {
    const GridSpec g = make_grid({0.0, 1.0}, 4);
    State st{RealField(g), RealField(g), RealField(g, 1.0), RealField(g), 0.0};
    CHECK(mass(st) == Approx(1.0).epsilon(1e-15));
  }
  SECTION("sine pair integrates to the box length") {
    const GridSpec g = make_grid({0.0, two_pi}, 16);
    RealField s(g);
    for (long j = 0; j < 16; ++j) s[g.index(j)] = std::sin(g.node(0, j));
    State st{RealField(g), RealField(g), s, s, 0.0};
    CHECK(mass(st) == Approx(two_pi).epsilon(1e-13));
  }
}

TEST_CASE("energy functional") {
  SECTION("zero state") {
    const GridSpec g = make_grid({0.0, 1.0}, 8);
    State st{RealField(g), RealField(g), RealField(g), RealField(g), 0.0};
    const auto ma = make_multiplier(g, 1.5);
    const auto mb = make_multiplier(g, 1.5);
    CHECK(energy(st, ma, mb) == 0.0);
  }
  SECTION("single-mode wave field for several orders") {
    const GridSpec g = make_grid({-20.0, 20.0}, 64);
    const double length = 40.0, mu = g.axis(0).mu;
    RealField u(g);
    for (long j = 0; j < 64; ++j) u[g.index(j)] = std::cos(mu * g.node(0, j));
    State st{u, RealField(g), RealField(g), RealField(g), 0.0};
    const auto ma = make_multiplier(g, 2.0);
    for (double beta : {1.2, 1.7, 2.0}) {
      const auto mb = make_multiplier(g, beta);
      const double expected = length / 8.0 * (std::pow(mu, beta) + 1.0);
      CHECK(energy(st, ma, mb) == Approx(expected).epsilon(1e-12));
    }
  }
  SECTION("pure v contribution") {
    const GridSpec g = make_grid({0.0, 1.0}, 8);
    State st{RealField(g), RealField(g, 1.0), RealField(g), RealField(g), 0.0};
    const auto m = make_multiplier(g, 2.0);
    CHECK(energy(st, m, m) == Approx(1.0).epsilon(1e-15));
  }
  SECTION("grid mismatch is rejected") {
    const GridSpec g = make_grid({0.0, 1.0}, 8);
    const GridSpec g2 = make_grid({0.0, 1.0}, 16);
    State st{RealField(g), RealField(g), RealField(g), RealField(g), 0.0};
    CHECK_THROWS_AS(energy(st, make_multiplier(g2, 2.0), make_multiplier(g, 2.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("phi magnitude") {
  const GridSpec g = make_grid({-3.0, 3.0}, 8);
  SECTION("pythagorean node") {
    State st{RealField(g), RealField(g), RealField(g, 3.0), RealField(g, 4.0),
             0.0};
    const RealField m = phi_magnitude(st);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(m[i] == Approx(5.0));
  }
  SECTION("equal parts scale by sqrt2") {
    RealField e(g);
    for (long j = 0; j < 8; ++j)
      e[g.index(j)] = std::exp(-g.node(0, j) * g.node(0, j));
    State st{RealField(g), RealField(g), e, e, 0.0};
    const RealField m = phi_magnitude(st);
    for (std::size_t i = 0; i < m.size(); ++i)
      CHECK(m[i] == Approx(std::numbers::sqrt2 * e[i]).epsilon(1e-14));
  }
}

TEST_CASE("invariants are translation invariant") {
  const GridSpec g = make_grid({-20.0, 20.0}, 32);
  auto rng = testing::make_rng(21);
  const State st = testing::random_state(g, rng, 0.8);
  const auto ma = make_multiplier(g, 1.6);
  const auto mb = make_multiplier(g, 1.9);
  const double m0 = mass(st);
  const double h0 = energy(st, ma, mb);

  auto rotate = [&](const RealField& f, long shift) {
    RealField out(g);
    const long n = g.axis(0).n;
    for (long j = 0; j < n; ++j)
      out[g.index((j + shift) % n)] = f[g.index(j)];
    return out;
  };
  for (long shift : {1L, 7L, 16L}) {
    State sh{rotate(st.u, shift), rotate(st.v, shift), rotate(st.p, shift),
             rotate(st.q, shift), 0.0};
    CHECK(mass(sh) == Approx(m0).epsilon(1e-12));
    CHECK(energy(sh, ma, mb) == Approx(h0).epsilon(1e-11));
  }
}

TEST_CASE("semi-discrete right-hand side matches the energy gradient") {
  const GridSpec g = make_grid({-10.0, 10.0}, 8);
  const auto ma = make_multiplier(g, 1.7);
  const auto mb = make_multiplier(g, 1.4);
  const double w = quad_weight(g);
  auto rng = testing::make_rng(23);

  for (int trial = 0; trial < 3; ++trial) {
    const State st = testing::random_state(g, rng, 0.4, false);
    const StateDeriv rhs = semi_discrete_rhs(st, ma, mb);

    // central differences of the energy in every component
    auto grad_component = [&](RealField State::*field, std::size_t i) {
      State plus = st, minus = st;
      const double base = (st.*field)[i];
      const double step = 1e-5 * (1.0 + std::abs(base));
      (plus.*field)[i] = base + step;
      (minus.*field)[i] = base - step;
      return (energy(plus, ma, mb) - energy(minus, ma, mb)) / (2.0 * step);
    };

    double max_err = 0.0, max_val = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double gu = grad_component(&State::u, i) / w;
      const double gv = grad_component(&State::v, i) / w;
      const double gp = grad_component(&State::p, i) / w;
      const double gq = grad_component(&State::q, i) / w;
      // canonical structure: du = +gv, dv = -gu, dp = -gq, dq = +gp
      max_err = std::max(max_err, std::abs(rhs.du[i] - gv));
      max_err = std::max(max_err, std::abs(rhs.dv[i] + gu));
      max_err = std::max(max_err, std::abs(rhs.dp[i] + gq));
      max_err = std::max(max_err, std::abs(rhs.dq[i] - gp));
      max_val = std::max({max_val, std::abs(rhs.du[i]), std::abs(rhs.dv[i]),
                          std::abs(rhs.dp[i]), std::abs(rhs.dq[i])});
    }
    CHECK(max_err <= 1e-6 * std::max(1.0, max_val));
  }
}
