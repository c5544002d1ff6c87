#include <cmath>
#include <numbers>
#include <vector>

#include "apchemo/errors.hpp"
#include "apchemo/linsolve.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apchemo;

namespace {

CyclicTridiagonal random_dominant(std::size_t n, unsigned seed) {
  CyclicTridiagonal m(n);
  const auto lo = test::random_values(n, -1.0, 1.0, seed);
  const auto up = test::random_values(n, -1.0, 1.0, seed + 100);
  const auto d = test::random_values(n, 2.5, 4.0, seed + 200);
  m.lower = lo;
  m.upper = up;
  m.diag = d;
  return m;
}

}  // namespace

TEST_SUITE("linsolve") {
  TEST_CASE("cyclic tridiagonal agrees with dense elimination for sizes 4 to 64") {
    for (std::size_t n = 4; n <= 64; ++n) {
      const auto m = random_dominant(n, static_cast<unsigned>(n));
      const auto rhs = test::random_values(n, -5.0, 5.0, static_cast<unsigned>(n) + 7);
      const auto x = solve_cyclic_tridiagonal(m, rhs);
      const auto ref = test::dense_solve(test::from_row_major(m.to_dense(), n), rhs);
      CAPTURE(n);
      CHECK(test::max_abs_diff(x, ref) <= 1e-11 * test::max_abs(ref));
    }
  }

  TEST_CASE("non-dominant but regular cyclic systems") {
    // upwind-dominated matrices of the kind the density solve produces
    for (std::size_t n : {5u, 8u, 33u}) {
      CyclicTridiagonal m(n);
      for (std::size_t i = 0; i < n; ++i) {
        m.diag[i] = 1.0 + 0.3 * std::sin(static_cast<double>(i));
        m.lower[i] = -0.9;
        m.upper[i] = 0.05;
      }
      const auto rhs = test::random_values(n, -1.0, 1.0, 11);
      const auto x = solve_cyclic_tridiagonal(m, rhs);
      const auto ref = test::dense_solve(test::from_row_major(m.to_dense(), n), rhs);
      CHECK(test::max_abs_diff(x, ref) <= 1e-11 * test::max_abs(ref));
      CHECK(test::max_abs_diff(m.apply(x), rhs) <= 1e-12 * test::max_abs(rhs));
    }
  }

  TEST_CASE("apply matches the dense copy") {
    const auto m = random_dominant(9, 5);
    const auto x = test::random_values(9, -1.0, 1.0, 6);
    const auto y = m.apply(x);
    const auto ref = test::multiply(test::from_row_major(m.to_dense(), 9), x);
    CHECK(test::max_abs_diff(y, ref) <= 1e-14);
  }

  TEST_CASE("singular system reports its pivot") {
    CyclicTridiagonal m(6);
    for (std::size_t i = 0; i < 6; ++i) {
      m.diag[i] = 2.0;
      m.lower[i] = -1.0;
      m.upper[i] = -1.0;
    }
    const std::vector<double> rhs(6, 1.0);
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(m, rhs), SingularPivot);
  }

  TEST_CASE("1D screened Poisson reproduces the cosine eigenpair") {
    const auto x = SpatialAxis::from_count(0.0, 2.0 * std::numbers::pi, 64);
    for (int mode : {1, 3, 10}) {
      DensityField rho(x.n);
      for (std::size_t j = 0; j < x.n; ++j) rho[j] = std::cos(mode * x.node(j));
      const auto c = solve_screened_poisson_1d(rho, x);
      const double lambda = 4.0 / (x.dx * x.dx) * std::pow(std::sin(mode * x.dx / 2.0), 2);
      for (std::size_t j = 0; j < x.n; ++j) {
        CHECK(c[j] == doctest::Approx(rho[j] / (1.0 + lambda)).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("1D screened Poisson vs dense oracle, mean and maximum principle") {
    for (std::size_t n : {8u, 17u, 40u}) {
      const auto x = SpatialAxis::from_count(-1.0, 3.0, n);
      DensityField rho(test::random_values(n, 0.0, 2.0, static_cast<unsigned>(n)));
      const auto c = solve_screened_poisson_1d(rho, x);
      std::vector<double> minus(n);
      for (std::size_t j = 0; j < n; ++j) minus[j] = -rho[j];
      const auto ref = test::dense_solve(test::screened_poisson_dense_1d(n, x.dx), minus);
      CHECK(test::max_abs_diff(c.values(), ref) <= 1e-11 * test::max_abs(ref));
      double mc = 0.0, mr = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        mc += c[j];
        mr += rho[j];
        CHECK(c[j] >= 0.0);
      }
      CHECK(mc == doctest::Approx(mr).epsilon(1e-13));
    }
  }

  TEST_CASE("2D screened Poisson vs dense oracle") {
    for (auto [n1, n2] : {std::pair<std::size_t, std::size_t>{8, 8}, {6, 10}, {5, 7}}) {
      const Grid2D grid{SpatialAxis::from_count(0.0, 2.0, n1), SpatialAxis::from_count(0.0, 3.0, n2),
                        VelocityAxis::symmetric(1.0, 1.0), VelocityAxis::symmetric(1.0, 1.0)};
      DensityField rho(test::random_values(n1 * n2, 0.0, 1.0, static_cast<unsigned>(n1 + n2)));
      const auto c = solve_screened_poisson_2d(rho, grid);
      std::vector<double> minus(rho.size());
      for (std::size_t i = 0; i < rho.size(); ++i) minus[i] = -rho[i];
      const auto ref = test::dense_solve(
          test::screened_poisson_dense_2d(n1, n2, grid.x1.dx, grid.x2.dx), minus);
      CAPTURE(n1);
      CAPTURE(n2);
      CHECK(test::max_abs_diff(c.values(), ref) <= 1e-11 * test::max_abs(ref));
      double mc = 0.0, mr = 0.0;
      for (std::size_t i = 0; i < rho.size(); ++i) {
        mc += c[i];
        mr += rho[i];
        CHECK(c[i] >= 0.0);
      }
      CHECK(mc == doctest::Approx(mr).epsilon(1e-13));
    }
  }

  TEST_CASE("five-point solver: dense and iterative paths") {
    auto make = [](std::size_t n1, std::size_t n2) {
      FivePointSystem m(n1, n2);
      const std::size_t n = n1 * n2;
      const auto w = test::random_values(n, 0.0, 1.0, 21);
      const auto e = test::random_values(n, 0.0, 1.0, 22);
      const auto s = test::random_values(n, 0.0, 1.0, 23);
      const auto no = test::random_values(n, 0.0, 1.0, 24);
      for (std::size_t i = 0; i < n; ++i) {
        m.west[i] = -w[i];
        m.east[i] = -e[i];
        m.south[i] = -s[i];
        m.north[i] = -no[i];
        m.diag[i] = 1.0 + w[i] + e[i] + s[i] + no[i];
      }
      return m;
    };
    {
      const auto m = make(8, 8);
      const auto rhs = test::random_values(64, -1.0, 1.0, 25);
      SolveInfo info;
      const auto x = solve_five_point(m, rhs, &info);
      CHECK(info.method == SolveInfo::Method::dense_lu);
      const auto ref = test::dense_solve(test::from_row_major(m.to_dense(), 64), rhs);
      CHECK(test::max_abs_diff(x, ref) <= 1e-11 * test::max_abs(ref));
      const auto y = test::multiply(test::from_row_major(m.to_dense(), 64), x);
      CHECK(test::max_abs_diff(m.apply(x), y) <= 1e-13);
    }
    {
      const auto m = make(40, 40);
      const auto rhs = test::random_values(1600, -1.0, 1.0, 26);
      SolveInfo info;
      const auto x = solve_five_point(m, rhs, &info);
      CHECK(info.method != SolveInfo::Method::dense_lu);
      CHECK(info.relative_residual <= 1e-10);
      CHECK(test::max_abs_diff(m.apply(x), rhs) <= 1e-9 * test::max_abs(rhs));
    }
  }

  TEST_CASE("five-point dense copy wraps periodically") {
    FivePointSystem m(3, 4);
    for (std::size_t i = 0; i < 12; ++i) {
      m.diag[i] = 10.0 + static_cast<double>(i);
      m.west[i] = -1.0;
      m.east[i] = -2.0;
      m.south[i] = -3.0;
      m.north[i] = -4.0;
    }
    const auto d = m.to_dense();
    // node (0, 0): west is (2, 0), south is (0, 3)
    CHECK(d[0 * 12 + 8] == -1.0);
    CHECK(d[0 * 12 + 4] == -2.0);
    CHECK(d[0 * 12 + 3] == -3.0);
    CHECK(d[0 * 12 + 1] == -4.0);
  }
}
