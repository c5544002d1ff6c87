#include "apchemo/macro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "apchemo/errors.hpp"
#include "face_assembly.hpp"

namespace apchemo {

namespace {

void require_finite(std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) throw NumericalError(StepStage::macro_solve, i, "non-finite value");
  }
}

void check_inputs(const MacroState& s, const VelocityKernels& kernels, const Grid1D& grid,
                  double dt) {
  check_shape(s, grid);
  if (kernels.v.size() != grid.nv()) throw InvalidArgument("kernels do not match grid");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
}

void check_inputs(const MacroState2D& s, const Grid2D& grid, double dt) {
  if (s.rho.size() != grid.nodes() || s.c.size() != grid.nodes()) {
    throw InvalidArgument("macro 2D state: size does not match grid");
  }
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
}

}  // namespace

CyclicTridiagonal assemble_macro_matrix(const MacroState& state, const DensityField& rho_coeff,
                                        const VelocityKernels& kernels, const Grid1D& grid,
                                        const ModelParams& p, double dt) {
  const std::size_t n = grid.nx();
  const double dx = grid.x.dx;
  CyclicTridiagonal m(n);
  std::fill(m.diag.begin(), m.diag.end(), 1.0);
  const auto& c = state.c;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, n);
    const double mobility = mobility_d(0.5 * (rho_coeff[j] + rho_coeff[r]), p);
    const double dc = (c[r] - c[j]) / dx;
    const double eta = kernels.v_phi * dc;
    const auto f = detail::face_flux(kernels.dh * mobility, eta, dc >= 0.0,
                                     upwind_squeeze(rho_coeff[j], p),
                                     upwind_squeeze(rho_coeff[r], p), dx);
    detail::add_face(m, j, f, dt / dx);
  }
  return m;
}

std::vector<double> macro_rhs(const DensityField& rho, const ModelParams& p, double dt) {
  std::vector<double> r(rho.size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = rho[j] + dt * logistic_source(rho[j], p);
  return r;
}

MacroState macro_step_semi_implicit(const MacroState& state, const VelocityKernels& kernels,
                                    const Grid1D& grid, const ModelParams& p, double dt) {
  check_inputs(state, kernels, grid, dt);
  const auto m = assemble_macro_matrix(state, state.rho, kernels, grid, p, dt);
  MacroState next;
  next.rho = DensityField(solve_cyclic_tridiagonal(m, macro_rhs(state.rho, p, dt)));
  require_finite(next.rho.values());
  next.c = solve_screened_poisson_1d(next.rho, grid);
  next.t = state.t + dt;
  return next;
}

namespace {

double mobility_slope(double rho, const ModelParams& p) {
  if (p.gamma == 1.0) return 0.0;
  return p.gamma * (p.gamma - 1.0) * std::pow(rho, p.gamma - 1.0) / std::pow(p.rho_bar, p.gamma);
}

double upwind_squeeze_slope(double rho, const ModelParams& p) {
  return squeeze(rho, p) > 0.0 ? squeeze_derivative(rho, p) : 0.0;
}

// Jacobian of rho -> M(rho) rho when d and the upwind squeeze factors both
// follow rho; one-sided slope at the clip of the squeeze factor.
CyclicTridiagonal implicit_jacobian(const MacroState& state, const DensityField& rho,
                                    const VelocityKernels& kernels, const Grid1D& grid,
                                    const ModelParams& p, double dt) {
  const std::size_t n = grid.nx();
  const double dx = grid.x.dx;
  CyclicTridiagonal m(n);
  std::fill(m.diag.begin(), m.diag.end(), 1.0);
  const auto& c = state.c;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, n);
    const double mid = 0.5 * (rho[j] + rho[r]);
    const double dr = (rho[r] - rho[j]) / dx;
    const double dc = (c[r] - c[j]) / dx;
    const double eta = kernels.v_phi * dc;
    const double up = dc >= 0.0 ? eta : 0.0;
    const double down = dc >= 0.0 ? 0.0 : -eta;
    const double bend = 0.5 * kernels.dh * mobility_slope(mid, p) * dr;
    const double diffusion = kernels.dh * mobility_d(mid, p) / dx;
    const detail::FaceCoefficients f{
        -bend + diffusion + up * upwind_squeeze(rho[r], p) -
            down * rho[r] * upwind_squeeze_slope(rho[j], p),
        -bend - diffusion + up * rho[j] * upwind_squeeze_slope(rho[r], p) -
            down * upwind_squeeze(rho[j], p)};
    detail::add_face(m, j, f, dt / dx);
  }
  return m;
}

}  // namespace

namespace {

// Fully implicit system M(rho) rho = rho^n + dt L(rho^n) from `guess`; empty
// after 50 sweeps without convergence. `sweeps` accumulates the work done.
std::optional<DensityField> resolve_implicit(const MacroState& state, DensityField guess,
                                             const VelocityKernels& kernels, const Grid1D& grid,
                                             const ModelParams& p, double dt, PicardInfo& info) {
  constexpr std::size_t max_iterations = 50;
  constexpr double tolerance = 1e-12;
  const auto rhs = macro_rhs(state.rho, p, dt);
  auto coefficients = [](const DensityField& rho) {
    DensityField out = rho;
    for (double& x : out.values()) x = std::max(x, 0.0);
    return out;
  };
  auto picard = [&](const DensityField& rho) {
    return DensityField(solve_cyclic_tridiagonal(
        assemble_macro_matrix(state, coefficients(rho), kernels, grid, p, dt), rhs));
  };
  auto residual = [&](const DensityField& rho) {
    auto r = assemble_macro_matrix(state, coefficients(rho), kernels, grid, p, dt)
                 .apply(rho.values());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= rhs[j];
    return r;
  };
  auto norm = [](const std::vector<double>& r) {
    double m = 0.0;
    for (double x : r) m += x * x;
    return std::sqrt(m);
  };
  // Newton step damped until the residual drops; empty if none does.
  auto newton_step = [&](const DensityField& rho) -> std::optional<DensityField> {
    const auto r = residual(rho);
    const double r0 = norm(r);
    std::vector<double> step;
    try {
      step = solve_cyclic_tridiagonal(
          implicit_jacobian(state, coefficients(rho), kernels, grid, p, dt), r);
    } catch (const SingularPivot&) {
      return std::nullopt;
    }
    double lambda = 1.0;
    for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
      DensityField trial = rho;
      for (std::size_t j = 0; j < step.size(); ++j) trial[j] -= lambda * step[j];
      if (norm(residual(trial)) < (1.0 - 1e-4 * lambda) * r0) return trial;
    }
    return std::nullopt;
  };

  DensityField iterate = std::move(guess);
  double previous = std::numeric_limits<double>::infinity();
  bool newton = false;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    std::optional<DensityField> next;
    if (newton) next = newton_step(iterate);
    if (!next) next = picard(iterate);
    require_finite(next->values());
    double update = 0.0;
    for (std::size_t j = 0; j < next->size(); ++j) {
      update = std::max(update, std::abs((*next)[j] - iterate[j]));
    }
    iterate = std::move(*next);
    ++info.iterations;
    info.last_update = update;
    info.newton = info.newton || newton;
    // without chemotaxis and with constant mobility the first solve is the fixed point
    if (update < tolerance || (p.gamma == 1.0 && p.A == 0.0)) return iterate;
    // Picard contracts slowly once the maximum nears rho_bar
    if (!newton && update > 0.5 * previous) newton = true;
    previous = update;
  }
  return std::nullopt;
}

}  // namespace

MacroState macro_step_implicit_d(const MacroState& state, const VelocityKernels& kernels,
                                 const Grid1D& grid, const ModelParams& p, double dt,
                                 PicardInfo* info) {
  check_inputs(state, kernels, grid, dt);
  PicardInfo work;
  auto solved = resolve_implicit(state, state.rho, kernels, grid, p, dt, work);
  if (!solved) {
    // continuation in the step size: the same level-n system with dt scaled by
    // tau, each solution seeding the next, until tau reaches 1
    work.continuation = true;
    DensityField guess = state.rho;
    double reached = 0.0;
    double increment = 0.5;
    while (reached < 1.0) {
      if (increment < 1.0 / 1024.0) {
        if (info) *info = work;
        throw ConvergenceError("implicit mobility iteration did not converge", work.last_update);
      }
      const double tau = std::min(1.0, reached + increment);
      if (auto r = resolve_implicit(state, guess, kernels, grid, p, tau * dt, work)) {
        guess = std::move(*r);
        reached = tau;
        increment *= 2.0;
      } else {
        increment *= 0.5;
      }
    }
    solved = std::move(guess);
  }
  if (info) *info = work;
  MacroState out;
  out.rho = std::move(*solved);
  out.c = solve_screened_poisson_1d(out.rho, grid);
  out.t = state.t + dt;
  return out;
}

MacroMatrixReport mmatrix_report(const CyclicTridiagonal& m) {
  const std::size_t n = m.size();
  const auto dense = m.to_dense();
  MacroMatrixReport rep;
  rep.min_diagonal = n ? dense[0] : 0.0;
  rep.max_offdiagonal = -std::numeric_limits<double>::infinity();
  bool dominant = true;
  for (std::size_t col = 0; col < n; ++col) {
    double sum = 0.0;
    double off = 0.0;
    for (std::size_t row = 0; row < n; ++row) {
      const double a = dense[row * n + col];
      sum += a;
      if (row == col) {
        rep.min_diagonal = std::min(rep.min_diagonal, a);
      } else {
        off += std::abs(a);
        rep.max_offdiagonal = std::max(rep.max_offdiagonal, a);
      }
    }
    rep.column_sum_deviation = std::max(rep.column_sum_deviation, std::abs(sum - 1.0));
    if (!(dense[col * n + col] > off)) dominant = false;
  }
  if (n < 2) rep.max_offdiagonal = 0.0;
  rep.is_column_diag_dominant = dominant;
  return rep;
}

MacroMatrixReport mmatrix_report(const MacroState& state, const VelocityKernels& kernels,
                                 const Grid1D& grid, const ModelParams& p, double dt) {
  check_inputs(state, kernels, grid, dt);
  return mmatrix_report(assemble_macro_matrix(state, state.rho, kernels, grid, p, dt));
}

MacroState macro_step(MacroVariant variant, const MacroState& state,
                      const VelocityKernels& kernels, const Grid1D& grid, const ModelParams& p,
                      double dt) {
  return variant == MacroVariant::semi_implicit
             ? macro_step_semi_implicit(state, kernels, grid, p, dt)
             : macro_step_implicit_d(state, kernels, grid, p, dt);
}

MacroState macro_run(MacroState initial, MacroVariant variant, const Grid1D& grid,
                     const ModelParams& p, const RunOptions& options,
                     const SnapshotSink<MacroState>& sink) {
  validate(p);
  const auto kernels = build_kernels(grid, p);
  return run_trajectory(
      std::move(initial), options,
      [&](MacroState& s) { s = macro_step(variant, s, kernels, grid, p, options.dt); }, sink);
}

FivePointSystem assemble_macro_matrix_2d(const MacroState2D& state,
                                         const VelocityKernels2D& kernels, const Grid2D& grid,
                                         const ModelParams& p, double dt) {
  check_inputs(state, grid, dt);
  const std::size_t n1 = grid.n1();
  const std::size_t n2 = grid.n2();
  FivePointSystem m(n1, n2);
  std::fill(m.diag.begin(), m.diag.end(), 1.0);
  const auto& rho = state.rho;
  const auto& c = state.c;
  const double h1 = grid.x1.dx;
  const double h2 = grid.x2.dx;
  for (std::size_t j1 = 0; j1 < n1; ++j1) {
    const std::size_t e1 = wrap(static_cast<std::ptrdiff_t>(j1) + 1, n1);
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      const std::size_t e2 = wrap(static_cast<std::ptrdiff_t>(j2) + 1, n2);
      const std::size_t l = grid.index(j1, j2);
      {
        const std::size_t r = grid.index(e1, j2);
        const double dc = (c[r] - c[l]) / h1;
        const auto f = detail::face_flux(kernels.dh1 * mobility_d(0.5 * (rho[l] + rho[r]), p),
                                         kernels.v_phi1 * dc, dc >= 0.0,
                                         upwind_squeeze(rho[l], p), upwind_squeeze(rho[r], p),
                                         h1);
        detail::add_face(m, 1, l, r, f, dt / h1);
      }
      {
        const std::size_t r = grid.index(j1, e2);
        const double dc = (c[r] - c[l]) / h2;
        const auto f = detail::face_flux(kernels.dh2 * mobility_d(0.5 * (rho[l] + rho[r]), p),
                                         kernels.v_phi2 * dc, dc >= 0.0,
                                         upwind_squeeze(rho[l], p), upwind_squeeze(rho[r], p),
                                         h2);
        detail::add_face(m, 2, l, r, f, dt / h2);
      }
    }
  }
  return m;
}

MacroState2D macro_step_2d(const MacroState2D& state, const VelocityKernels2D& kernels,
                           const Grid2D& grid, const ModelParams& p, double dt, SolveInfo* info) {
  const auto m = assemble_macro_matrix_2d(state, kernels, grid, p, dt);
  MacroState2D next;
  next.rho = DensityField(solve_five_point(m, macro_rhs(state.rho, p, dt), info));
  require_finite(next.rho.values());
  next.c = solve_screened_poisson_2d(next.rho, grid);
  next.t = state.t + dt;
  return next;
}

MacroState2D macro_run_2d(MacroState2D initial, const Grid2D& grid, const ModelParams& p,
                          const RunOptions& options, const SnapshotSink<MacroState2D>& sink) {
  validate(p);
  const auto kernels = build_kernels(grid, p);
  return run_trajectory(
      std::move(initial), options,
      [&](MacroState2D& s) { s = macro_step_2d(s, kernels, grid, p, options.dt); }, sink);
}

}  // namespace apchemo
