#include "apchemo/linsolve.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apchemo/errors.hpp"
#include "fft.hpp"

namespace apchemo {

std::vector<double> CyclicTridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto si = static_cast<std::ptrdiff_t>(i);
    y[i] = lower[i] * x[wrap(si - 1, n)] + diag[i] * x[i] + upper[i] * x[wrap(si + 1, n)];
  }
  return y;
}

std::vector<double> CyclicTridiagonal::to_dense() const {
  const std::size_t n = size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto si = static_cast<std::ptrdiff_t>(i);
    a[i * n + wrap(si - 1, n)] += lower[i];
    a[i * n + i] += diag[i];
    a[i * n + wrap(si + 1, n)] += upper[i];
  }
  return a;
}

namespace {

// Thomas elimination of a plain tridiagonal matrix, applied to two right-hand sides.
void thomas_two(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                std::vector<double>& x, std::vector<double>& z, double tol) {
  const std::size_t n = b.size();
  std::vector<double> cp(n);
  double piv = b[0];
  if (std::abs(piv) < tol) throw SingularPivot(0, piv);
  cp[0] = c[0] / piv;
  x[0] /= piv;
  z[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = b[i] - a[i] * cp[i - 1];
    if (std::abs(piv) < tol) throw SingularPivot(i, piv);
    cp[i] = c[i] / piv;
    x[i] = (x[i] - a[i] * x[i - 1]) / piv;
    z[i] = (z[i] - a[i] * z[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= cp[i] * x[i + 1];
    z[i] -= cp[i] * z[i + 1];
  }
}

}  // namespace

std::vector<double> solve_cyclic_tridiagonal(const CyclicTridiagonal& m,
                                             std::span<const double> rhs) {
  const std::size_t n = m.size();
  if (m.lower.size() != n || m.upper.size() != n || rhs.size() != n) {
    throw InvalidArgument("solve_cyclic_tridiagonal: inconsistent sizes");
  }
  if (n == 0) return {};
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(m.lower[i]), std::abs(m.diag[i]), std::abs(m.upper[i])});
  }
  const double tol = 1e-14 * scale;

  if (n == 1) {
    const double d = m.lower[0] + m.diag[0] + m.upper[0];
    if (std::abs(d) <= tol || d == 0.0) throw SingularPivot(0, d);
    return {rhs[0] / d};
  }
  if (n == 2) {
    const double a00 = m.diag[0], a01 = m.lower[0] + m.upper[0];
    const double a10 = m.lower[1] + m.upper[1], a11 = m.diag[1];
    if (std::abs(a00) < tol) throw SingularPivot(0, a00);
    const double piv = a11 - a10 * a01 / a00;
    if (std::abs(piv) < tol) throw SingularPivot(1, piv);
    const double x1 = (rhs[1] - a10 * rhs[0] / a00) / piv;
    return {(rhs[0] - a01 * x1) / a00, x1};
  }

  const double beta = m.lower[0];      // A(0, n-1)
  const double alpha = m.upper[n - 1]; // A(n-1, 0)
  const double gamma = m.diag[0] != 0.0 ? -m.diag[0] : -scale;

  std::vector<double> bb(m.diag);
  bb[0] -= gamma;
  bb[n - 1] -= alpha * beta / gamma;

  std::vector<double> x(rhs.begin(), rhs.end());
  std::vector<double> z(n, 0.0);
  z[0] = gamma;
  z[n - 1] = alpha;
  thomas_two(m.lower, bb, m.upper, x, z, tol);

  const double denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
  if (std::abs(denom) < 1e-14) throw SingularPivot(n - 1, denom);
  const double fact = (x[0] + beta * x[n - 1] / gamma) / denom;
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

ChemoField solve_screened_poisson_1d(const DensityField& rho, const SpatialAxis& axis) {
  const std::size_t n = rho.size();
  if (n != axis.n) throw InvalidArgument("solve_screened_poisson_1d: size mismatch");
  const double h2 = 1.0 / (axis.dx * axis.dx);
  CyclicTridiagonal m(n);
  std::vector<double> rhs(n);
  // (I - delta^2) c = rho, the positive-definite form of the same equation
  for (std::size_t j = 0; j < n; ++j) {
    m.lower[j] = -h2;
    m.diag[j] = 1.0 + 2.0 * h2;
    m.upper[j] = -h2;
    rhs[j] = rho[j];
  }
  return ChemoField(solve_cyclic_tridiagonal(m, rhs));
}

ChemoField solve_screened_poisson_2d(const DensityField& rho, const Grid2D& grid) {
  const std::size_t n1 = grid.n1();
  const std::size_t n2 = grid.n2();
  if (rho.size() != n1 * n2) throw InvalidArgument("solve_screened_poisson_2d: size mismatch");

  detail::FftBuffers fft(n1, n2);
  std::copy(rho.values().begin(), rho.values().end(), fft.real());
  fft.forward();

  auto symbol = [](std::size_t m, std::size_t n, double dx) {
    return 2.0 / (dx * dx) *
           (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(m) /
                           static_cast<double>(n)));
  };
  const double norm = 1.0 / static_cast<double>(n1 * n2);
  const std::size_t half = fft.half();
  for (std::size_t m1 = 0; m1 < n1; ++m1) {
    const double mu1 = symbol(m1, n1, grid.x1.dx);
    for (std::size_t m2 = 0; m2 < half; ++m2) {
      const double mu2 = symbol(m2, n2, grid.x2.dx);
      fft.scale_spectrum(m1 * half + m2, norm / (1.0 + mu1 + mu2));
    }
  }
  fft.backward();
  return ChemoField(std::vector<double>(fft.real(), fft.real() + n1 * n2));
}

namespace {

struct Neighbours {
  std::size_t w, e, s, n;
};

Neighbours neighbours(std::size_t n1, std::size_t n2, std::size_t i) {
  const auto j1 = static_cast<std::ptrdiff_t>(i / n2);
  const auto j2 = static_cast<std::ptrdiff_t>(i % n2);
  const auto at = [n2](std::size_t a, std::size_t b) { return a * n2 + b; };
  return {at(wrap(j1 - 1, n1), static_cast<std::size_t>(j2)),
          at(wrap(j1 + 1, n1), static_cast<std::size_t>(j2)),
          at(static_cast<std::size_t>(j1), wrap(j2 - 1, n2)),
          at(static_cast<std::size_t>(j1), wrap(j2 + 1, n2))};
}

Eigen::SparseMatrix<double> to_sparse(const FivePointSystem& m) {
  const std::size_t n = m.size();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(5 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = neighbours(m.n1, m.n2, i);
    const auto r = static_cast<int>(i);
    t.emplace_back(r, r, m.diag[i]);
    t.emplace_back(r, static_cast<int>(nb.w), m.west[i]);
    t.emplace_back(r, static_cast<int>(nb.e), m.east[i]);
    t.emplace_back(r, static_cast<int>(nb.s), m.south[i]);
    t.emplace_back(r, static_cast<int>(nb.n), m.north[i]);
  }
  Eigen::SparseMatrix<double> a(static_cast<int>(n), static_cast<int>(n));
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  return a;
}

}  // namespace

std::vector<double> FivePointSystem::apply(std::span<const double> x) const {
  std::vector<double> y(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto nb = neighbours(n1, n2, i);
    y[i] = diag[i] * x[i] + west[i] * x[nb.w] + east[i] * x[nb.e] + south[i] * x[nb.s] +
           north[i] * x[nb.n];
  }
  return y;
}

std::vector<double> FivePointSystem::to_dense() const {
  const std::size_t n = size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = neighbours(n1, n2, i);
    a[i * n + i] += diag[i];
    a[i * n + nb.w] += west[i];
    a[i * n + nb.e] += east[i];
    a[i * n + nb.s] += south[i];
    a[i * n + nb.n] += north[i];
  }
  return a;
}

std::vector<double> solve_five_point(const FivePointSystem& m, std::span<const double> rhs,
                                     SolveInfo* info) {
  const std::size_t n = m.size();
  if (rhs.size() != n || m.n1 * m.n2 != n) {
    throw InvalidArgument("solve_five_point: inconsistent sizes");
  }
  SolveInfo local;
  SolveInfo& out = info ? *info : local;
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n));
  const double bnorm = std::max(b.norm(), 1e-300);
  Eigen::VectorXd x;

  if (n <= dense_solve_limit) {
    const auto dense = m.to_dense();
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        a(dense.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    x = lu.solve(b);
    out.method = SolveInfo::Method::dense_lu;
    out.iterations = 0;
    out.relative_residual = (a * x - b).norm() / bnorm;
  } else {
    const auto a = to_sparse(m);
    Eigen::GMRES<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> gmres;
    gmres.set_restart(50);
    gmres.setTolerance(1e-12);
    gmres.setMaxIterations(2000);
    gmres.compute(a);
    x = gmres.solve(b);
    out.method = SolveInfo::Method::gmres;
    out.iterations = static_cast<std::size_t>(gmres.iterations());
    out.relative_residual = (a * x - b).norm() / bnorm;
    if (gmres.info() != Eigen::Success || out.relative_residual > 1e-10) {
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(a);
      if (lu.info() != Eigen::Success) {
        throw ConvergenceError("solve_five_point: GMRES stalled and sparse LU failed",
                               out.relative_residual);
      }
      x = lu.solve(b);
      out.method = SolveInfo::Method::sparse_lu;
      out.relative_residual = (a * x - b).norm() / bnorm;
    }
  }
  if (!std::isfinite(out.relative_residual) || out.relative_residual > 1e-10) {
    throw ConvergenceError("solve_five_point: residual above 1e-10", out.relative_residual);
  }
  return {x.data(), x.data() + x.size()};
}

}  // namespace apchemo
