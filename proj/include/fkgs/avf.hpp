// SPDX-License-Identifier: Apache-2.0
//
// Closed-form line averages used by the averaged-vector-field time steppers:
// integrals over e in [0,1] of linear, quadratic and bilinear expressions in
// the segment endpoints. All integrands are polynomial, so these are exact.

#pragma once

#include <complex>

#include "fkgs/field.hpp"

namespace fkgs {

/// int_0^1 (e*b + (1-e)*a) de
constexpr double linear_midpoint(double a, double b) { return 0.5 * (a + b); }

/// int_0^1 (e*b + (1-e)*a)^2 de = (a^2 + a*b + b^2)/3, identical to the
/// Simpson form (a^2 + 4*((a+b)/2)^2 + b^2)/6.
constexpr double quadratic_mean(double a, double b) {
  return (a * a + a * b + b * b) / 3.0;
}

/// int_0^1 (e*u1 + (1-e)*u0)*(e*q1 + (1-e)*q0) de
///   = (2*u1*q1 + u1*q0 + u0*q1 + 2*u0*q0)/6.
constexpr double bilinear_mean(double u0, double u1, double q0, double q1) {
  return (2.0 * u1 * q1 + u1 * q0 + u0 * q1 + 2.0 * u0 * q0) / 6.0;
}

/// Bilinear average with a complex second pair (linear in q0, q1).
inline std::complex<double> bilinear_mean(double u0, double u1,
                                          std::complex<double> q0,
                                          std::complex<double> q1) {
  return (2.0 * u1 * q1 + u1 * q0 + u0 * q1 + 2.0 * u0 * q0) / 6.0;
}

// Nodewise lifts; every nonlinearity in the schemes acts pointwise.

inline RealField quadratic_mean(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "quadratic_mean");
  RealField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = quadratic_mean(a[i], b[i]);
  return out;
}

inline ComplexField bilinear_mean(const RealField& u0, const RealField& u1,
                                  const ComplexField& q0,
                                  const ComplexField& q1) {
  require_same_grid(u0.grid(), q0.grid(), "bilinear_mean");
  require_same_grid(u1.grid(), q1.grid(), "bilinear_mean");
  ComplexField out(u0.grid());
  for (std::size_t i = 0; i < u0.size(); ++i)
    out[i] = bilinear_mean(u0[i], u1[i], q0[i], q1[i]);
  return out;
}

}  // namespace fkgs
