// SPDX-License-Identifier: Apache-2.0
//
// Nodal fields over a periodic grid: one value per grid node, real or
// complex. Fields carry their GridSpec so shape mismatches are caught at
// the operation boundary.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fkgs/grid.hpp"

namespace fkgs {

template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(const GridSpec& grid, T init = T{})
      : grid_(grid), data_(grid.size(), init) {}
  Field(const GridSpec& grid, std::vector<T> values)
      : grid_(grid), data_(std::move(values)) {
    if (data_.size() != grid_.size())
      throw std::invalid_argument("field data length does not match grid");
  }

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

 private:
  GridSpec grid_;
  std::vector<T> data_;
};

using RealField = Field<double>;
using ComplexField = Field<std::complex<double>>;

inline void require_same_grid(const GridSpec& a, const GridSpec& b,
                              const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

inline double inf_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double inf_norm(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double inf_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double inf_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline ComplexField to_complex(const RealField& re, const RealField& im) {
  require_same_grid(re.grid(), im.grid(), "to_complex");
  ComplexField w(re.grid());
  for (std::size_t i = 0; i < re.size(); ++i)
    w[i] = {re[i], im[i]};
  return w;
}

inline RealField real_part(const ComplexField& w) {
  RealField f(w.grid());
  for (std::size_t i = 0; i < w.size(); ++i) f[i] = w[i].real();
  return f;
}

inline RealField imag_part(const ComplexField& w) {
  RealField f(w.grid());
  for (std::size_t i = 0; i < w.size(); ++i) f[i] = w[i].imag();
  return f;
}

}  // namespace fkgs
