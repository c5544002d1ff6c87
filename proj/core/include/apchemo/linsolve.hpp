#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "apchemo/fields.hpp"
#include "apchemo/grid.hpp"

namespace apchemo {

/// Periodic tridiagonal matrix. Row i reads
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]
/// with indices wrapped, so lower[0] is the (0, n-1) corner and upper[n-1]
/// the (n-1, 0) corner.
struct CyclicTridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  CyclicTridiagonal() = default;
  explicit CyclicTridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }
  /// y = M x
  std::vector<double> apply(std::span<const double> x) const;
  /// Dense row-major copy; for diagnostics and tests.
  std::vector<double> to_dense() const;
};

/// Sherman-Morrison reduction to two Thomas sweeps.
/// Throws SingularPivot when a pivot falls below 1e-14 times the largest entry.
std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonal& m,
                                             std::span<const double> rhs);

/// (delta_x^2 - I) c = -rho on a periodic axis.
ChemoField solve_screened_poisson_1d(const DensityField& rho, const SpatialAxis& axis);
inline ChemoField solve_screened_poisson_1d(const DensityField& rho, const Grid1D& grid) {
  return solve_screened_poisson_1d(rho, grid.x);
}

/// ((delta_1^2 + delta_2^2) - I) c = -rho, diagonalised with a real 2D FFT.
ChemoField solve_screened_poisson_2d(const DensityField& rho, const Grid2D& grid);

/// Periodic five-point operator on an n1 x n2 node grid (flat index j1 * n2 + j2).
/// west/east couple to j1 -+ 1, south/north to j2 -+ 1.
struct FivePointSystem {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<double> diag;
  std::vector<double> west;
  std::vector<double> east;
  std::vector<double> south;
  std::vector<double> north;

  FivePointSystem() = default;
  FivePointSystem(std::size_t rows1, std::size_t rows2)
      : n1(rows1), n2(rows2), diag(rows1 * rows2, 0.0), west(rows1 * rows2, 0.0),
        east(rows1 * rows2, 0.0), south(rows1 * rows2, 0.0), north(rows1 * rows2, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }
  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> to_dense() const;
};

struct SolveInfo {
  enum class Method { dense_lu, gmres, sparse_lu } method = Method::dense_lu;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Unknown count at or below which the five-point system is factorised densely.
inline constexpr std::size_t dense_solve_limit = 1024;

/// Dense LU up to dense_solve_limit unknowns, otherwise restarted GMRES with a
/// Jacobi preconditioner (sparse LU if GMRES stalls). Throws ConvergenceError if
/// the final residual exceeds 1e-10 relative.
std::vector<double> solve_five_point(const FivePointSystem& m, std::span<const double> rhs,
                                     SolveInfo* info = nullptr);

}  // namespace apchemo
