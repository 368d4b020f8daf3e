// SPDX-License-Identifier: Apache-2.0
//
// Discrete phase space of the coupled wave/Schroedinger system. The complex
// unknown is split as phi = q + i*p and the wave velocity is halved,
// v = u_t/2, which turns the system into a canonical Hamiltonian form in the
// four real fields (u, v, p, q).
//
// Invariants tracked by the steppers:
//   mass    M = ||P||^2 + ||Q||^2            (h-weighted norms)
//   energy  H = (w/4) * ( -P.D^a P - U.D^b U - Q.D^a Q
//                         + U.U + 4 V.V - 2 U.(P^2+Q^2) )
// with w the quadrature weight h (h_x*h_y in 2D).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "fkgs/field.hpp"
#include "fkgs/grid.hpp"
#include "fkgs/spectral.hpp"

namespace fkgs {

struct Params {
  double alpha = 2.0;   // Schroedinger-part fractional order
  double beta = 2.0;    // wave-part fractional order
  double tau = 1e-3;    // time step
  double t_final = 1.0; // horizon
  double tol = 1e-12;   // fixed-point stopping tolerance (scaled update norm)
  int max_iter = 200;

  void validate() const {
    if (!(alpha > 1.0) || !(alpha <= 2.0))
      throw std::invalid_argument("alpha must satisfy 1 < alpha <= 2");
    if (!(beta > 1.0) || !(beta <= 2.0))
      throw std::invalid_argument("beta must satisfy 1 < beta <= 2");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  }
};

/// Spatial point; the second coordinate is ignored on 1D grids.
using Point = std::array<double, 2>;

/// Initial data in the original variables: complex phi(x,0), u(x,0) and
/// u_t(x,0). Periodicity on the box is the caller's responsibility (smooth
/// rapidly decaying profiles are periodic to truncation).
struct InitialData {
  std::function<std::complex<double>(const Point&)> phi0;
  std::function<double(const Point&)> u0;
  std::function<double(const Point&)> ut0;
};

struct State {
  RealField u, v, p, q;
  double t = 0.0;

  const GridSpec& grid() const { return u.grid(); }
};

/// Quadrature weight of the h-weighted inner product.
inline double quad_weight(const GridSpec& g) {
  double w = g.axis(0).h;
  if (g.dim() == 2) w *= g.axis(1).h;
  return w;
}

inline State initialize(const GridSpec& grid, const InitialData& data) {
  State st{RealField(grid), RealField(grid), RealField(grid), RealField(grid),
           0.0};
  auto sample = [&](std::size_t i, const Point& pt) {
    const std::complex<double> phi = data.phi0(pt);
    st.q[i] = phi.real();
    st.p[i] = phi.imag();
    st.u[i] = data.u0(pt);
    st.v[i] = 0.5 * data.ut0(pt);
    if (!std::isfinite(st.q[i]) || !std::isfinite(st.p[i]) ||
        !std::isfinite(st.u[i]) || !std::isfinite(st.v[i]))
      throw std::invalid_argument("initial data produced a non-finite sample");
  };
  if (grid.dim() == 1) {
    for (long j = 0; j < grid.axis(0).n; ++j)
      sample(grid.index(j), {grid.node(0, j), 0.0});
  } else {
    for (long jx = 0; jx < grid.axis(0).n; ++jx)
      for (long jy = 0; jy < grid.axis(1).n; ++jy)
        sample(grid.index(jx, jy), {grid.node(0, jx), grid.node(1, jy)});
  }
  return st;
}

inline double mass(const State& st) {
  double acc = 0.0;
  for (std::size_t i = 0; i < st.p.size(); ++i)
    acc += st.p[i] * st.p[i] + st.q[i] * st.q[i];
  return quad_weight(st.grid()) * acc;
}

inline double energy(const State& st, const SpectralMultiplier& m_alpha,
                     const SpectralMultiplier& m_beta) {
  require_same_grid(st.grid(), m_alpha.grid(), "energy");
  require_same_grid(st.grid(), m_beta.grid(), "energy");
  const RealField dp = apply_neg_frac_laplacian(st.p, m_alpha);
  const RealField dq = apply_neg_frac_laplacian(st.q, m_alpha);
  const RealField du = apply_neg_frac_laplacian(st.u, m_beta);
  double acc = 0.0;
  for (std::size_t i = 0; i < st.u.size(); ++i) {
    const double p = st.p[i], q = st.q[i], u = st.u[i], v = st.v[i];
    acc += -p * dp[i] - u * du[i] - q * dq[i] + u * u + 4.0 * v * v -
           2.0 * u * (p * p + q * q);
  }
  return 0.25 * quad_weight(st.grid()) * acc;
}

/// |phi| = sqrt(p^2 + q^2) nodewise.
inline RealField phi_magnitude(const State& st) {
  RealField out(st.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::hypot(st.p[i], st.q[i]);
  return out;
}

}  // namespace fkgs
