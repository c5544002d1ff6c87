#include <cmath>
#include <vector>

#include "apchemo/analysis.hpp"
#include "apchemo/errors.hpp"
#include "apchemo/kinetic1d.hpp"
#include "apchemo/macro.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apchemo;

namespace {

// 8-point periodic grid with a coarse velocity axis; values away from any
// degenerate case so every branch of the stencils is exercised.
struct Fixture {
  ModelParams p;
  Grid1D grid{SpatialAxis::from_count(0.0, 2.0, 8), VelocityAxis::symmetric(2.0, 0.5)};
  VelocityKernels kernels;
  KineticState state;

  explicit Fixture(double gamma = 2.0, unsigned seed = 1) {
    p.gamma = gamma;
    p.A = 2.0;
    p.epsilon = 0.3;
    p.r0 = 0.4;
    kernels = build_kernels(grid, p);
    const std::size_t n = grid.nx(), nv = grid.nv();
    state.rho = DensityField(test::random_values(n, 0.15, 0.65, seed));
    state.c = ChemoField(test::random_values(n, 0.2, 0.8, seed + 1));
    state.g = PhaseArray(nv, n);
    const auto raw = test::random_values(nv * n, -0.5, 0.5, seed + 2);
    for (std::size_t j = 0; j < n; ++j) {
      double mean = 0.0;
      for (std::size_t k = 0; k < nv; ++k) mean += raw[k * n + j];
      mean /= static_cast<double>(nv);
      for (std::size_t k = 0; k < nv; ++k) state.g(k, j) = raw[k * n + j] - mean;
    }
  }
};

KineticState homogeneous(const Grid1D& grid, double rho) {
  return {0.0, DensityField(grid.nx(), rho), PhaseArray(grid.nv(), grid.nx()),
          ChemoField(grid.nx(), rho)};
}

double velocity_mean_max(const PhaseArray& g, double dv) {
  double worst = 0.0;
  for (std::size_t j = 0; j < g.n_space(); ++j) {
    worst = std::max(worst, std::abs(moment(g.column(j), dv)));
  }
  return worst;
}

}  // namespace

TEST_SUITE("kinetic1d") {
  TEST_CASE("upwind flux follows the chemo gradient sign") {
    ModelParams p;
    const DensityField now{std::vector<double>{0.2, 0.4, 0.3}};
    const DensityField next{std::vector<double>{0.25, 0.35, 0.1}};
    CHECK(upwind_phi(next, now, 1.0, 0, p) == doctest::Approx(0.25 * (1.0 - 0.4)));
    CHECK(upwind_phi(next, now, 0.0, 0, p) == doctest::Approx(0.25 * (1.0 - 0.4)));
    CHECK(upwind_phi(next, now, -1.0, 0, p) == doctest::Approx(0.35 * (1.0 - 0.2)));
    // face 2 wraps to node 0
    CHECK(upwind_phi(next, now, 2.0, 2, p) == doctest::Approx(0.1 * (1.0 - 0.2)));
    CHECK(upwind_phi(next, now, -2.0, 2, p) == doctest::Approx(0.25 * (1.0 - 0.3)));
  }

  TEST_CASE("stencils match element-wise re-evaluation on an 8-point grid") {
    for (double gamma : {1.0, 2.0, 3.0}) {
      for (unsigned seed : {1u, 2u, 3u}) {
        Fixture f(gamma, seed);
        const double dt = 0.01;
        const test::KineticReference1D ref(f.state, f.grid, f.p);
        CAPTURE(gamma);
        CAPTURE(seed);
        CHECK(ref.dh() == doctest::Approx(f.kernels.dh).epsilon(1e-14));

        const auto K = compute_K(f.state, f.kernels, f.grid, f.p);
        CHECK(test::scaled_diff(K.data(), ref.K_all().data()) <= 1e-12);

        const auto gt = compute_g_tilde(f.state, f.kernels, f.grid, f.p, dt);
        const auto gt_ref = ref.g_tilde(dt);
        CHECK(test::scaled_diff(gt.data(), gt_ref.data()) <= 1e-12);

        // the library system is the reference system multiplied by dt
        const auto sys = assemble_density_system(f.state, gt_ref, f.kernels, f.grid, f.p, dt);
        const auto dense_ref = ref.density_matrix(dt);
        std::vector<double> scaled(dense_ref.a);
        for (double& x : scaled) x *= dt;
        CHECK(test::scaled_diff(sys.matrix.to_dense(), scaled) <= 1e-12);
        auto rhs_ref = ref.density_rhs(gt_ref, dt);
        for (double& x : rhs_ref) x *= dt;
        CHECK(test::scaled_diff(sys.rhs, rhs_ref) <= 1e-12);
        for (std::size_t j = 0; j < 8; ++j) {
          const auto sj = static_cast<std::ptrdiff_t>(j);
          CHECK(sys.a[j] == doctest::Approx(ref.coef_a(sj, dt)).epsilon(1e-13));
          CHECK(sys.b[j] == doctest::Approx(ref.coef_b(sj, dt)).epsilon(1e-13).scale(1.0));
          CHECK(sys.a[j] >= 0.0);
        }

        const auto rho_new = test::random_values(8, 0.15, 0.65, seed + 40);
        const auto g_new = recover_g(f.state, gt_ref, DensityField(rho_new), f.kernels, f.grid,
                                     f.p, dt);
        CHECK(test::scaled_diff(g_new.data(), ref.recover(gt_ref, rho_new, dt).data()) <= 1e-12);
      }
    }
  }

  TEST_CASE("one step equals the reference solve chain") {
    Fixture f(2.0, 9);
    const double dt = 0.02;
    const test::KineticReference1D ref(f.state, f.grid, f.p);
    const auto gt = ref.g_tilde(dt);
    const auto rho = test::dense_solve(ref.density_matrix(dt), ref.density_rhs(gt, dt));
    const auto g = ref.recover(gt, rho, dt);
    std::vector<double> minus(8);
    for (std::size_t j = 0; j < 8; ++j) minus[j] = -rho[j];
    const auto c = test::dense_solve(test::screened_poisson_dense_1d(8, f.grid.x.dx), minus);

    const auto next = kinetic_step(f.state, f.kernels, f.grid, f.p, dt);
    CHECK(test::scaled_diff(next.rho.values(), rho) <= 1e-12);
    CHECK(test::scaled_diff(next.g.data(), g.data()) <= 1e-12);
    CHECK(test::scaled_diff(next.c.values(), c) <= 1e-12);
    CHECK(next.t == doctest::Approx(dt));
  }

  TEST_CASE("solver object and free step agree bit for bit") {
    Fixture f(1.0, 4);
    KineticSolver1D solver(f.grid, f.p, 0.01);
    KineticState a = f.state;
    KineticState b = f.state;
    for (int i = 0; i < 5; ++i) {
      solver.advance(a);
      b = kinetic_step(b, f.kernels, f.grid, f.p, 0.01);
    }
    CHECK(a.rho == b.rho);
    CHECK(a.g == b.g);
    CHECK(a.c == b.c);
  }

  TEST_CASE("g keeps zero velocity mean and mass is conserved without growth") {
    ModelParams p;
    p.r0 = 0.0;
    p.epsilon = 0.2;
    const Grid1D grid{SpatialAxis::from_spacing(-5.0, 5.0, 0.1), VelocityAxis::symmetric(6.0, 0.2)};
    KineticState s = homogeneous(grid, 0.5);
    const auto noise = test::random_values(grid.nx(), -0.1, 0.1, 17);
    for (std::size_t j = 0; j < grid.nx(); ++j) s.rho[j] += noise[j];
    double mass0 = 0.0;
    for (double r : s.rho.values()) mass0 += r;
    KineticSolver1D solver(grid, p, 1e-3);
    const double dv = solver.kernels().dv;
    double worst_mean = 0.0, worst_mass = 0.0;
    for (int i = 0; i < 1000; ++i) {
      solver.advance(s);
      worst_mean = std::max(worst_mean, velocity_mean_max(s.g, dv));
      double mass = 0.0;
      for (double r : s.rho.values()) mass += r;
      worst_mass = std::max(worst_mass, std::abs(mass - mass0) / mass0);
    }
    CHECK(worst_mean <= 1e-12);
    CHECK(worst_mass <= 1e-11);
  }

  TEST_CASE("homogeneous carrying-capacity state is a fixed point") {
    for (double eps : {1.0, 0.05, 1e-6}) {
      for (double dt : {1e-4, 1e-2, 1.0}) {
        ModelParams p;
        p.epsilon = eps;
        const Grid1D grid{SpatialAxis::from_count(0.0, 4.0, 16), VelocityAxis::symmetric(4.0, 0.5)};
        KineticState s = homogeneous(grid, p.rho_max);
        KineticSolver1D solver(grid, p, dt);
        for (int i = 0; i < 3; ++i) solver.advance(s);
        for (std::size_t j = 0; j < grid.nx(); ++j) {
          CHECK(s.rho[j] == doctest::Approx(p.rho_max).epsilon(1e-14));
          CHECK(s.c[j] == doctest::Approx(p.rho_max).epsilon(1e-14));
        }
        CHECK(test::max_abs(s.g.data()) <= 1e-14);
      }
    }
  }

  TEST_CASE("vanishing epsilon reproduces one macro step") {
    ModelParams p;
    p.epsilon = 1e-8;
    const Grid1D grid{SpatialAxis::from_spacing(-20.0, 20.0, 0.1), VelocityAxis::symmetric(20.0, 0.2)};
    const auto kernels = build_kernels(grid, p);
    KineticState s = homogeneous(grid, 0.5);
    const auto noise = test::random_values(grid.nx(), -0.1, 0.1, 5);
    for (std::size_t j = 0; j < grid.nx(); ++j) s.rho[j] += noise[j];
    const MacroState m{0.0, s.rho, s.c};
    const auto a = kinetic_step(s, kernels, grid, p, 1e-3);
    const auto b = macro_step_semi_implicit(m, kernels, grid, p, 1e-3);
    CHECK(relative_l2_error(b.rho, a.rho) <= 1e-6);
  }

  TEST_CASE("restarting a trajectory reproduces it exactly") {
    Fixture f(2.0, 6);
    const RunOptions ten{0.01, 0.1, 5};
    const RunOptions twenty{0.01, 0.2, 5};
    const auto half = kinetic_run(f.state, f.grid, f.p, ten);
    const auto resumed = kinetic_run(half, f.grid, f.p, ten);
    const auto whole = kinetic_run(f.state, f.grid, f.p, twenty);
    CHECK(resumed.rho == whole.rho);
    CHECK(resumed.g == whole.g);
    CHECK(resumed.c == whole.c);
    CHECK(resumed.t == doctest::Approx(whole.t));
  }

  TEST_CASE("trajectory sink sees step 0, every stride and the last step") {
    Fixture f(1.0, 2);
    std::vector<std::size_t> seen;
    kinetic_run(f.state, f.grid, f.p, RunOptions{0.01, 0.07, 3},
                [&](std::size_t i, const KineticState&) { seen.push_back(i); });
    CHECK(seen == std::vector<std::size_t>{0, 3, 6, 7});
  }

  TEST_CASE("predictor breakdown is reported with its stage") {
    ModelParams p;
    p.epsilon = 1e-3;
    const Grid1D grid{SpatialAxis::from_count(0.0, 1.0, 8), VelocityAxis::symmetric(2.0, 0.5)};
    KineticState s = homogeneous(grid, 0.5);
    s.rho[3] = 3.0;  // q far below zero at two half nodes
    s.rho[4] = 3.0;
    try {
      compute_g_tilde(s, build_kernels(grid, p), grid, p, 1.0);
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.stage() == StepStage::g_tilde);
      CHECK(e.index() >= 2);
      CHECK(e.index() <= 4);
    }
    CHECK_THROWS_AS(kinetic_run(s, grid, p, RunOptions{1.0, 2.0, 1}), RunAborted);
  }
}
