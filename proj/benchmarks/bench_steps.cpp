// Per-step cost of the solvers on the default meshes.

#include <benchmark/benchmark.h>

#include <random>

#include "apchemo/kinetic1d.hpp"
#include "apchemo/kinetic2d.hpp"
#include "apchemo/linsolve.hpp"
#include "apchemo/macro.hpp"

using namespace apchemo;

namespace {

DensityField noisy_density(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.4, 0.6);
  DensityField rho(n);
  for (double& x : rho.values()) x = u(rng);
  return rho;
}

Grid1D default_grid() {
  return {SpatialAxis::from_spacing(-20.0, 20.0, 0.1), VelocityAxis::symmetric(20.0, 0.2)};
}

void kinetic_step_1d(benchmark::State& st) {
  const auto grid = default_grid();
  ModelParams p;
  KineticSolver1D solver(grid, p, 1e-4);
  KineticState s{0.0, noisy_density(grid.nx()), PhaseArray(grid.nv(), grid.nx()),
                 ChemoField(grid.nx(), 0.5)};
  for (auto _ : st) {
    solver.advance(s);
    benchmark::DoNotOptimize(s.rho.values().data());
  }
  st.counters["phase_points"] = static_cast<double>(grid.nx() * grid.nv());
}
BENCHMARK(kinetic_step_1d)->Unit(benchmark::kMicrosecond);

void macro_step_1d(benchmark::State& st) {
  const auto grid = default_grid();
  ModelParams p;
  const auto kernels = build_kernels(grid, p);
  const auto rho = noisy_density(grid.nx());
  MacroState s{0.0, rho, solve_screened_poisson_1d(rho, grid)};
  const bool implicit = st.range(0) != 0;
  for (auto _ : st) {
    s = implicit ? macro_step_implicit_d(s, kernels, grid, p, 1e-3)
                 : macro_step_semi_implicit(s, kernels, grid, p, 1e-3);
    benchmark::DoNotOptimize(s.rho.values().data());
  }
  st.SetLabel(implicit ? "implicit_d" : "semi_implicit");
}
BENCHMARK(macro_step_1d)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void cyclic_solve(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CyclicTridiagonal m(n);
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.lower[i] = u(rng);
    m.upper[i] = u(rng);
    m.diag[i] = 3.0 + u(rng);
    rhs[i] = u(rng);
  }
  for (auto _ : st) benchmark::DoNotOptimize(solve_cyclic_tridiagonal(m, rhs));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(cyclic_solve)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oN);

void kinetic_step_2d(benchmark::State& st) {
  const auto x = SpatialAxis::from_spacing(-5.0, 5.0, 0.25);
  const auto v = VelocityAxis::symmetric(4.0, 0.5);
  const Grid2D grid{x, x, v, v};
  ModelParams p;
  p.epsilon = 0.01;
  KineticSolver2D solver(grid, p, 1e-2);
  KineticState2D s{0.0, noisy_density(grid.nodes()), PhaseArray(grid.nv(), grid.nodes()),
                   PhaseArray(grid.nv(), grid.nodes()), ChemoField(grid.nodes(), 0.5)};
  for (auto _ : st) {
    solver.advance(s);
    benchmark::DoNotOptimize(s.rho.values().data());
  }
}
BENCHMARK(kinetic_step_2d)->Unit(benchmark::kMillisecond);

void macro_step_2d_desk(benchmark::State& st) {
  const auto x = SpatialAxis::from_spacing(-5.0, 5.0, 0.25);
  const auto v = VelocityAxis::symmetric(4.0, 0.5);
  const Grid2D grid{x, x, v, v};
  ModelParams p;
  const auto kernels = build_kernels(grid, p);
  MacroState2D s{0.0, noisy_density(grid.nodes()), ChemoField(grid.nodes(), 0.5)};
  for (auto _ : st) {
    s = macro_step_2d(s, kernels, grid, p, 1e-2);
    benchmark::DoNotOptimize(s.rho.values().data());
  }
}
BENCHMARK(macro_step_2d_desk)->Unit(benchmark::kMillisecond);

}  // namespace
