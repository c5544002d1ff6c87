#include <cmath>
#include <vector>

#include "apchemo/errors.hpp"
#include "apchemo/kernels.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apchemo;

TEST_SUITE("kernels") {
  TEST_CASE("discrete moments of psi0 and phi") {
    ModelParams p;
    const auto k = build_kernels(VelocityAxis::symmetric(20.0, 0.2), p);
    CHECK(moment(k.psi0, k.dv) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<double> vpsi(k.v.size()), psi1(k.v.size());
    for (std::size_t i = 0; i < k.v.size(); ++i) {
      vpsi[i] = k.v[i] * k.psi0[i];
      psi1[i] = psi1_eval(k, i, 0.731);
    }
    CHECK(std::abs(moment(vpsi, k.dv)) <= 1e-14);
    CHECK(std::abs(moment(psi1, k.dv)) <= 1e-14);
    CHECK(k.dh > 0.0);
    CHECK(k.dh == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(k.v_phi == doctest::Approx(20.0 * k.dh).epsilon(1e-14));
  }

  TEST_CASE("coarse velocity grid keeps the exact identities") {
    ModelParams p;
    p.A = 3.0;
    const auto k = build_kernels(VelocityAxis::symmetric(2.0, 0.5), p);
    CHECK(moment(k.psi0, k.dv) == doctest::Approx(1.0).epsilon(1e-15));
    double dh = 0.0;
    for (std::size_t i = 0; i < k.v.size(); ++i) dh += k.dv * k.v[i] * k.v[i] * k.psi0[i];
    CHECK(k.dh == doctest::Approx(dh).epsilon(1e-14));
    CHECK(k.dh < 1.0);  // truncation at |v| = 2 removes tail variance
    CHECK(k.v_phi == doctest::Approx(3.0 * k.dh).epsilon(1e-14));
  }

  TEST_CASE("projection is idempotent and annihilated by its complement") {
    ModelParams p;
    const auto k = build_kernels(VelocityAxis::symmetric(20.0, 0.2), p);
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const auto eta = test::random_values(k.v.size(), -3.0, 3.0, seed);
      const auto once = project(eta, k);
      const auto twice = project(once, k);
      CHECK(test::max_abs_diff(once, twice) <= 1e-13);
      const auto zero = project_complement(once, k);
      CHECK(test::max_abs(zero) <= 1e-13);
      const auto comp = project_complement(eta, k);
      CHECK(std::abs(moment(comp, k.dv)) <= 1e-13);
    }
  }

  TEST_CASE("2D tensor moments are diagonal") {
    ModelParams p;
    p.A = 7.0;
    const Grid2D grid{SpatialAxis::from_count(0, 1, 4), SpatialAxis::from_count(0, 1, 4),
                      VelocityAxis::symmetric(4.0, 0.5), VelocityAxis::symmetric(3.0, 0.5)};
    const auto k = build_kernels(grid, p);
    const std::size_t n2 = k.n_v2();
    double mass = 0.0, m11 = 0.0, m12 = 0.0, m22 = 0.0, p11 = 0.0, p12 = 0.0, p21 = 0.0,
           p22 = 0.0;
    for (std::size_t a = 0; a < k.n_v1(); ++a) {
      for (std::size_t b = 0; b < n2; ++b) {
        const std::size_t i = a * n2 + b;
        const double v1 = k.axis1.v[a], v2 = k.axis2.v[b];
        mass += k.psi0[i];
        m11 += v1 * v1 * k.psi0[i];
        m12 += v1 * v2 * k.psi0[i];
        m22 += v2 * v2 * k.psi0[i];
        p11 += v1 * k.phi1[i];
        p12 += v1 * k.phi2[i];
        p21 += v2 * k.phi1[i];
        p22 += v2 * k.phi2[i];
      }
    }
    const double cell = k.cell();
    CHECK(mass * cell == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m11 * cell == doctest::Approx(k.dh1).epsilon(1e-12));
    CHECK(m22 * cell == doctest::Approx(k.dh2).epsilon(1e-12));
    CHECK(std::abs(m12 * cell) <= 1e-12);
    CHECK(p11 * cell == doctest::Approx(7.0 * k.dh1).epsilon(1e-12));
    CHECK(p22 * cell == doctest::Approx(7.0 * k.dh2).epsilon(1e-12));
    CHECK(std::abs(p12 * cell) <= 1e-12);
    CHECK(std::abs(p21 * cell) <= 1e-12);
    // each axis reproduces its own 1D diffusion coefficient
    CHECK(k.dh1 == doctest::Approx(k.axis1.dh).epsilon(1e-12));
    CHECK(k.dh2 == doctest::Approx(k.axis2.dh).epsilon(1e-12));
  }

  TEST_CASE("asymmetric velocity axis is rejected") {
    CHECK_THROWS_AS(build_kernels(VelocityAxis::from_bounds(-1.0, 2.0, 6), ModelParams{}),
                    InvalidArgument);
  }
}
