// SPDX-License-Identifier: Apache-2.0
//
// Fourier side of the solver: spectral multiplier tables for the fractional
// Laplacian, transform-based application of -(-Laplace)^{s/2}, and
// mode-diagonal solves of shifted operators. A dense differentiation matrix
// is provided in 1D as an independent oracle for the transform route.
//
// Conventions: forward transforms are unnormalized, the inverse carries the
// 1/N factor per axis. Mode k of an N-point axis lives in transform slot
// k >= 0 ? k : k+N, so the slot order is 0..N/2-1, -N/2..-1; the Nyquist
// mode -N/2 carries the full symbol weight |N*mu/2|^s.

#pragma once

#include <fftw3.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fkgs/field.hpp"
#include "fkgs/grid.hpp"

namespace fkgs {

/// Per-mode symbol values lambda_k >= 0 of (-Laplace)^{s/2} on a periodic
/// grid: |k*mu|^s in 1D, (mu_x^2 k_x^2 + mu_y^2 k_y^2)^{s/2} in 2D.
class SpectralMultiplier {
 public:
  SpectralMultiplier() = default;
  SpectralMultiplier(const GridSpec& grid, double order,
                     std::vector<double> values)
      : grid_(grid), order_(order), values_(std::move(values)) {}

  const GridSpec& grid() const { return grid_; }
  double order() const { return order_; }
  const std::vector<double>& values() const { return values_; }

 private:
  GridSpec grid_;
  double order_ = 0.0;
  std::vector<double> values_;
};

inline SpectralMultiplier make_multiplier(const GridSpec& grid, double s) {
  if (!(s > 1.0) || !(s <= 2.0))
    throw std::domain_error("fractional order must satisfy 1 < s <= 2");
  std::vector<double> values(grid.size());
  if (grid.dim() == 1) {
    const Axis& ax = grid.axis(0);
    for (long j = 0; j < ax.n; ++j) {
      const double k = mode_index(j, ax.n) * ax.mu;
      values[grid.index(j)] = k == 0.0 ? 0.0 : std::pow(std::abs(k), s);
    }
  } else {
    const Axis& ax = grid.axis(0);
    const Axis& ay = grid.axis(1);
    for (long jx = 0; jx < ax.n; ++jx) {
      const double kx = mode_index(jx, ax.n) * ax.mu;
      for (long jy = 0; jy < ay.n; ++jy) {
        const double ky = mode_index(jy, ay.n) * ay.mu;
        const double k2 = kx * kx + ky * ky;
        values[grid.index(jx, jy)] = k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * s);
      }
    }
  }
  return SpectralMultiplier(grid, s, std::move(values));
}

/// Multiplier of order s/2 obtained from one of order s; exact since the
/// symbol table just takes square roots. Composing apply_symbol with it
/// twice factorizes D^s.
inline SpectralMultiplier half_order(const SpectralMultiplier& m) {
  std::vector<double> values(m.values().size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::sqrt(m.values()[i]);
  return SpectralMultiplier(m.grid(), 0.5 * m.order(), std::move(values));
}

namespace detail {

/// Complex in-place FFT plans for one grid, cached per thread. FFTW's
/// planner is not thread safe, so plan creation/destruction is serialized;
/// execution via fftw_execute_dft is safe.
class Fft {
 public:
  explicit Fft(const GridSpec& grid) : size_(grid.size()) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = fftw_alloc_complex(size_);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (grid.dim() == 1) {
      fwd_ = fftw_plan_dft_1d(grid.axis(0).n, buf_, buf_, FFTW_FORWARD, flags);
      bwd_ = fftw_plan_dft_1d(grid.axis(0).n, buf_, buf_, FFTW_BACKWARD, flags);
    } else {
      fwd_ = fftw_plan_dft_2d(grid.axis(0).n, grid.axis(1).n, buf_, buf_,
                              FFTW_FORWARD, flags);
      bwd_ = fftw_plan_dft_2d(grid.axis(0).n, grid.axis(1).n, buf_, buf_,
                              FFTW_BACKWARD, flags);
    }
  }

  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::complex<double>* inout) const {
    fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(inout),
                     reinterpret_cast<fftw_complex*>(inout));
  }

  /// Applies the backward transform and the 1/N normalization.
  void inverse(std::complex<double>* inout) const {
    fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(inout),
                     reinterpret_cast<fftw_complex*>(inout));
    const double scale = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < size_; ++i) inout[i] *= scale;
  }

  static const Fft& shared(const GridSpec& grid) {
    thread_local std::map<std::array<long, 3>, std::unique_ptr<Fft>> cache;
    std::array<long, 3> key{grid.dim(), grid.axis(0).n,
                            grid.dim() == 2 ? grid.axis(1).n : 0};
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, std::make_unique<Fft>(grid)).first;
    return *it->second;
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  std::size_t size_ = 0;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

/// Extracts the real part after a symbol application to a real input; the
/// imaginary residue must be at transform roundoff level or the symbol was
/// not real/even.
inline RealField take_real_checked(const std::vector<std::complex<double>>& v,
                                   const GridSpec& grid) {
  double max_re = 0.0, max_im = 0.0;
  for (const auto& z : v) {
    max_re = std::max(max_re, std::abs(z.real()));
    max_im = std::max(max_im, std::abs(z.imag()));
  }
  if (max_im > 1e-12 * std::max(1.0, max_re))
    throw std::runtime_error("imaginary residue above tolerance in real-symbol application");
  RealField out(grid);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

/// Transform, multiply mode k by weight(lambda_k), inverse transform.
template <class Weight>
ComplexField apply_mode_weights(const ComplexField& f,
                                const SpectralMultiplier& m, Weight&& weight) {
  const Fft& fft = Fft::shared(f.grid());
  ComplexField hat = f;
  fft.forward(hat.data());
  const std::vector<double>& lam = m.values();
  for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= weight(lam[i]);
  fft.inverse(hat.data());
  return hat;
}

template <class Weight>
RealField apply_mode_weights_real(const RealField& f,
                                  const SpectralMultiplier& m,
                                  Weight&& weight) {
  ComplexField w(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) w[i] = f[i];
  ComplexField out = apply_mode_weights(w, m, weight);
  return take_real_checked(out.values(), f.grid());
}

}  // namespace detail

/// D^s f, i.e. -(-Laplace)^{s/2} applied through the transforms; exact for
/// band-limited inputs.
inline RealField apply_neg_frac_laplacian(const RealField& f,
                                          const SpectralMultiplier& m) {
  require_same_grid(f.grid(), m.grid(), "apply_neg_frac_laplacian");
  return detail::apply_mode_weights_real(
      f, m, [](double lam) { return std::complex<double>(-lam, 0.0); });
}

inline ComplexField apply_neg_frac_laplacian(const ComplexField& f,
                                             const SpectralMultiplier& m) {
  require_same_grid(f.grid(), m.grid(), "apply_neg_frac_laplacian");
  return detail::apply_mode_weights(
      f, m, [](double lam) { return std::complex<double>(-lam, 0.0); });
}

/// (-Laplace)^{s/2} f, the positive-symbol companion; with a multiplier of
/// order s/2 this is the half-order factor of D^s.
inline RealField apply_symbol(const RealField& f, const SpectralMultiplier& m) {
  require_same_grid(f.grid(), m.grid(), "apply_symbol");
  return detail::apply_mode_weights_real(
      f, m, [](double lam) { return std::complex<double>(lam, 0.0); });
}

namespace detail {

inline void check_denominator(double mag, double scale) {
  if (!(mag > 1e-15 * scale))
    throw std::domain_error("shifted spectral operator is singular at a mode");
}

}  // namespace detail

/// Solves (a*I - b*D^s) x = rhs by dividing mode k by (a + b*lambda_k).
inline RealField solve_shifted(double a, double b, const SpectralMultiplier& m,
                               const RealField& rhs) {
  require_same_grid(rhs.grid(), m.grid(), "solve_shifted");
  const double scale = std::abs(a) + std::abs(b) + 1.0;
  return detail::apply_mode_weights_real(rhs, m, [&](double lam) {
    const double den = a + b * lam;
    detail::check_denominator(std::abs(den), scale);
    return std::complex<double>(1.0 / den, 0.0);
  });
}

/// Complex-coefficient variant used by the unitary (P,Q) updates.
inline ComplexField solve_shifted(std::complex<double> a,
                                  std::complex<double> b,
                                  const SpectralMultiplier& m,
                                  const ComplexField& rhs) {
  require_same_grid(rhs.grid(), m.grid(), "solve_shifted");
  const double scale = std::abs(a) + std::abs(b) + 1.0;
  return detail::apply_mode_weights(rhs, m, [&](double lam) {
    const std::complex<double> den = a + b * lam;
    detail::check_denominator(std::abs(den), scale);
    return 1.0 / den;
  });
}

/// Dense symmetric circulant representation of D^s on a 1D grid, built from
/// the interpolation element formula
///   (D^s)_{j,l} = -sum_{k=-N/2..N/2} |k*mu|^s e^{-i k mu (x_j-x_l)} / (N c_k)
/// with c_k = 2 at k = +-N/2 and 1 otherwise. Small-N oracle use only.
class DenseOperator {
 public:
  DenseOperator(int n, std::vector<double> first_row)
      : n_(n), row_(std::move(first_row)) {}

  int size() const { return n_; }

  double operator()(long j, long l) const {
    return row_[static_cast<std::size_t>(((j - l) % n_ + n_) % n_)];
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(x.size(), 0.0);
    for (long j = 0; j < n_; ++j) {
      double acc = 0.0;
      for (long l = 0; l < n_; ++l) acc += (*this)(j, l) * x[static_cast<std::size_t>(l)];
      y[static_cast<std::size_t>(j)] = acc;
    }
    return y;
  }

 private:
  int n_;
  std::vector<double> row_;
};

inline DenseOperator dense_matrix(const GridSpec& grid, double s) {
  if (grid.dim() != 1)
    throw std::invalid_argument("dense_matrix supports 1D grids only");
  const Axis& ax = grid.axis(0);
  if (ax.n > 256)
    throw std::invalid_argument("dense_matrix is an oracle for N <= 256");
  if (!(s > 1.0) || !(s <= 2.0))
    throw std::domain_error("fractional order must satisfy 1 < s <= 2");

  const int n = ax.n;
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (int d = 0; d < n; ++d) {
    // Element for x_j - x_l = d*h; the +-k terms pair into cosines, so the
    // sum is real by construction.
    double acc = 0.0;
    for (int k = -n / 2; k <= n / 2; ++k) {
      const double ck = (k == n / 2 || k == -n / 2) ? 2.0 : 1.0;
      const double kmu = std::abs(k) * ax.mu;
      const double w = k == 0 ? 0.0 : std::pow(kmu, s);
      acc += w * std::cos(k * ax.mu * d * ax.h) / (n * ck);
    }
    row[static_cast<std::size_t>(d)] = -acc;
  }
  return DenseOperator(n, std::move(row));
}

}  // namespace fkgs
