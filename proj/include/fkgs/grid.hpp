// SPDX-License-Identifier: Apache-2.0
//
// Periodic tensor-product collocation grids in one and two dimensions.
// Nodes are x_j = x_a + j*h, j = 0..N-1, with the right endpoint identified
// with the left one. N must be even so that mode indices split cleanly into
// {-N/2, ..., N/2-1}.

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fkgs {

struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
  bool operator==(const Interval&) const = default;
};

/// One axis of a periodic grid: box edges, point count, mesh size h and
/// base angular frequency mu = 2*pi/(b-a).
struct Axis {
  double x_a = 0.0;
  double x_b = 0.0;
  int n = 0;
  double h = 0.0;
  double mu = 0.0;

  bool operator==(const Axis&) const = default;
};

class GridSpec {
 public:
  GridSpec() = default;

  int dim() const { return dim_; }
  std::size_t size() const { return size_; }

  const Axis& axis(int d) const { return ax_[static_cast<std::size_t>(d)]; }

  /// Coordinate of node j along axis d.
  double node(int d, long j) const {
    const Axis& a = ax_[static_cast<std::size_t>(d)];
    return a.x_a + static_cast<double>(j) * a.h;
  }

  /// Flat index; 2D layout is row-major with the second axis contiguous.
  std::size_t index(long jx) const { return static_cast<std::size_t>(jx); }
  std::size_t index(long jx, long jy) const {
    return static_cast<std::size_t>(jx) * static_cast<std::size_t>(ax_[1].n) +
           static_cast<std::size_t>(jy);
  }

  bool operator==(const GridSpec&) const = default;

  friend GridSpec make_grid(Interval box, int n);
  friend GridSpec make_grid(Interval box_x, int nx, Interval box_y, int ny);

 private:
  static Axis make_axis(Interval box, int n) {
    if (!(box.a < box.b))
      throw std::invalid_argument("grid box is degenerate: x_a must be < x_b");
    if (n < 4 || n % 2 != 0)
      throw std::invalid_argument("grid needs an even point count >= 4, got " +
                                  std::to_string(n));
    Axis ax;
    ax.x_a = box.a;
    ax.x_b = box.b;
    ax.n = n;
    ax.h = (box.b - box.a) / static_cast<double>(n);
    ax.mu = 2.0 * std::numbers::pi / (box.b - box.a);
    return ax;
  }

  int dim_ = 0;
  std::array<Axis, 2> ax_{};
  std::size_t size_ = 0;
};

inline GridSpec make_grid(Interval box, int n) {
  GridSpec g;
  g.dim_ = 1;
  g.ax_[0] = GridSpec::make_axis(box, n);
  g.size_ = static_cast<std::size_t>(n);
  return g;
}

inline GridSpec make_grid(Interval box_x, int nx, Interval box_y, int ny) {
  GridSpec g;
  g.dim_ = 2;
  g.ax_[0] = GridSpec::make_axis(box_x, nx);
  g.ax_[1] = GridSpec::make_axis(box_y, ny);
  g.size_ = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  return g;
}

/// Signed mode index of transform slot j on an axis with n points:
/// 0, 1, ..., n/2-1, -n/2, ..., -1.
inline int mode_index(long j, int n) {
  return j < n / 2 ? static_cast<int>(j) : static_cast<int>(j) - n;
}

}  // namespace fkgs
