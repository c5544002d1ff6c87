#pragma once

#include <cstddef>

namespace apchemo {

/// Periodic index map shared by every stencil: j in [-n, 2n) -> [0, n).
inline std::size_t wrap(std::ptrdiff_t j, std::size_t n) noexcept {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  j %= sn;
  return static_cast<std::size_t>(j < 0 ? j + sn : j);
}

/// Uniform periodic axis with n nodes x_j = x_min + j dx, node n identified with node 0.
struct SpatialAxis {
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 1.0;
  std::size_t n = 1;

  /// Node count from (x_max - x_min)/dx; throws if dx does not divide the length.
  static SpatialAxis from_spacing(double x_min, double x_max, double dx);
  static SpatialAxis from_count(double x_min, double x_max, std::size_t n);

  double length() const noexcept { return x_max - x_min; }
  double node(std::size_t j) const noexcept { return x_min + static_cast<double>(j) * dx; }
  double half_node(std::size_t j) const noexcept {
    return x_min + (static_cast<double>(j) + 0.5) * dx;
  }
  bool operator==(const SpatialAxis&) const = default;
};

/// Truncated velocity axis with n_intervals + 1 nodes from v_min to v_max.
struct VelocityAxis {
  double v_min = -1.0;
  double v_max = 1.0;
  double dv = 1.0;
  std::size_t n_intervals = 2;

  static VelocityAxis symmetric(double v_max, double dv);
  static VelocityAxis from_bounds(double v_min, double v_max, std::size_t n_intervals);

  std::size_t count() const noexcept { return n_intervals + 1; }
  bool is_symmetric() const noexcept { return v_min == -v_max; }

  /// On a symmetric axis v_k == -v_{n-k} holds bit-exactly.
  double node(std::size_t k) const noexcept {
    if (is_symmetric()) {
      return 0.5 * (2.0 * static_cast<double>(k) - static_cast<double>(n_intervals)) * dv;
    }
    return v_min + static_cast<double>(k) * dv;
  }
  bool operator==(const VelocityAxis&) const = default;
};

struct Grid1D {
  SpatialAxis x;
  VelocityAxis v;

  std::size_t nx() const noexcept { return x.n; }
  std::size_t nv() const noexcept { return v.count(); }
  bool operator==(const Grid1D&) const = default;
};

/// Tensor grid; node (j1, j2) is stored at j1 * n2 + j2.
struct Grid2D {
  SpatialAxis x1;
  SpatialAxis x2;
  VelocityAxis v1;
  VelocityAxis v2;

  std::size_t n1() const noexcept { return x1.n; }
  std::size_t n2() const noexcept { return x2.n; }
  std::size_t nodes() const noexcept { return x1.n * x2.n; }
  std::size_t nv() const noexcept { return v1.count() * v2.count(); }
  std::size_t index(std::size_t j1, std::size_t j2) const noexcept { return j1 * x2.n + j2; }
  bool operator==(const Grid2D&) const = default;
};

}  // namespace apchemo
