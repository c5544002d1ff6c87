#include "apchemo/kinetic1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "apchemo/errors.hpp"
#include "face_assembly.hpp"

namespace apchemo {

namespace {

void require_finite(std::span<const double> xs, StepStage stage, std::size_t stride = 0) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw NumericalError(stage, stride ? i % stride : i, "non-finite value");
    }
  }
}

void resize(StepWorkspace& ws, std::size_t nx, std::size_t nv) {
  for (auto* v : {&ws.rb, &ws.qh, &ws.q_node, &ws.dr, &ws.dc, &ws.phi_old, &ws.drift, &ws.den,
                  &ws.k_moment, &ws.flux}) {
    v->assign(nx, 0.0);
  }
  ws.ext.assign(nx + 2, 0.0);
  if (ws.k_term.n_space() != nx || ws.k_term.n_velocity() != nv) {
    ws.k_term = PhaseArray(nv, nx);
    ws.g_tilde = PhaseArray(nv, nx);
  }
  ws.system.matrix = CyclicTridiagonal(nx);
  ws.system.rhs.assign(nx, 0.0);
  ws.system.a.assign(nx, 0.0);
  ws.system.b.assign(nx, 0.0);
}

// Half-node quantities at level n shared by every stage of the step.
void prepare(const KineticState& s, const Grid1D& grid, const ModelParams& p, double dt,
             StepWorkspace& ws) {
  const std::size_t n = grid.nx();
  const double dx = grid.x.dx;
  const double eps2 = p.epsilon * p.epsilon;
  const auto& rho = s.rho;
  const auto& c = s.c;
  for (std::size_t j = 0; j < n; ++j) ws.q_node[j] = upwind_squeeze(rho[j], p);

  // node values of rho q'(rho) times the centred density gradient
  std::vector<double>& w = ws.flux;
  for (std::size_t j = 0; j < n; ++j) {
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const double grad = (rho[wrap(sj + 1, n)] - rho[wrap(sj - 1, n)]) / (2.0 * dx);
    w[j] = rho[j] * squeeze_derivative(rho[j], p) * grad;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, n);
    ws.rb[j] = 0.5 * (rho[j] + rho[r]);
    ws.qh[j] = squeeze(ws.rb[j], p);
    ws.dr[j] = (rho[r] - rho[j]) / dx;
    ws.dc[j] = (c[r] - c[j]) / dx;
    ws.phi_old[j] = ws.dc[j] >= 0.0 ? rho[j] * ws.q_node[r] : rho[r] * ws.q_node[j];
    ws.drift[j] = (w[r] - w[j]) / dx;
    ws.den[j] = eps2 / dt + ws.qh[j];
  }
}

void k_term(const PerturbationField& g, const VelocityKernels& kernels, double dx,
            StepWorkspace& ws) {
  const std::size_t n = g.n_space();
  const std::size_t nv = g.n_velocity();
  auto& ext = ws.ext;
  for (std::size_t k = 0; k < nv; ++k) {
    const auto row = g.row(k);
    for (std::size_t j = 0; j < n; ++j) ext[j + 1] = ws.qh[j] * row[j];
    ext[0] = ext[n];
    ext[n + 1] = ext[1];
    const double v = kernels.v[k];
    const double vp = std::max(v, 0.0) / dx;
    const double vm = std::max(-v, 0.0) / dx;
    const double w2 = v * v * kernels.psi0[k];
    auto out = ws.k_term.row(k);
    for (std::size_t j = 0; j < n; ++j) {
      const double q0 = ext[j + 1];
      out[j] = vp * (q0 - ext[j]) - vm * (ext[j + 2] - q0) + w2 * ws.drift[j];
    }
  }
}

void g_tilde(const KineticState& s, const VelocityKernels& kernels, const ModelParams& p,
             double dt, StepWorkspace& ws) {
  const std::size_t n = s.rho.size();
  const std::size_t nv = kernels.v.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!(ws.den[j] > 0.0)) {
      throw NumericalError(StepStage::g_tilde, j,
                           "eps^2/dt + q(rho_{j+1/2}) = " + std::to_string(ws.den[j]) + " <= 0");
    }
  }
  std::fill(ws.k_moment.begin(), ws.k_moment.end(), 0.0);
  for (std::size_t k = 0; k < nv; ++k) {
    const auto row = ws.k_term.row(k);
    for (std::size_t j = 0; j < n; ++j) ws.k_moment[j] += row[j];
  }
  for (double& m : ws.k_moment) m *= kernels.dv;

  const double eps = p.epsilon;
  const double eps2 = eps * eps;
  // per-half-node pieces independent of k
  std::vector<double>& growth = ws.flux;
  for (std::size_t j = 0; j < n; ++j) {
    growth[j] = eps2 / dt + eps2 * p.r0 * std::max(1.0 - ws.rb[j] / p.rho_max, 0.0);
  }
  for (std::size_t k = 0; k < nv; ++k) {
    const auto g = s.g.row(k);
    const auto kt = ws.k_term.row(k);
    auto out = ws.g_tilde.row(k);
    const double psi = kernels.psi0[k];
    const double vpsi = kernels.v[k] * psi;
    const double phi = kernels.phi[k];
    for (std::size_t j = 0; j < n; ++j) {
      const double num = growth[j] * g[j] - eps * (kt[j] - ws.k_moment[j] * psi) -
                         vpsi * ws.qh[j] * ws.dr[j] + phi * ws.dc[j] * ws.phi_old[j];
      out[j] = num / ws.den[j];
    }
  }
  require_finite(ws.g_tilde.data(), StepStage::g_tilde, n);
}

void assemble(const KineticState& s, const PhaseArray& gt, const VelocityKernels& kernels,
              const Grid1D& grid, const ModelParams& p, double dt, StepWorkspace& ws) {
  const std::size_t n = grid.nx();
  const std::size_t nv = kernels.v.size();
  const double dx = grid.x.dx;
  const double eps2 = p.epsilon * p.epsilon;
  auto& sys = ws.system;
  auto& m = sys.matrix;
  std::fill(m.lower.begin(), m.lower.end(), 0.0);
  std::fill(m.diag.begin(), m.diag.end(), 1.0);
  std::fill(m.upper.begin(), m.upper.end(), 0.0);

  // <v q g~>_h per half node
  std::vector<double>& flux = ws.flux;
  std::fill(flux.begin(), flux.end(), 0.0);
  for (std::size_t k = 0; k < nv; ++k) {
    const double v = kernels.v[k];
    if (v == 0.0) continue;
    const auto row = gt.row(k);
    for (std::size_t j = 0; j < n; ++j) flux[j] += v * row[j];
  }

  const double s_face = dt / dx;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, n);
    const double qh = ws.qh[j];
    const double denom = eps2 + qh * dt;
    if (!(denom > 0.0)) {
      throw NumericalError(StepStage::density_solve, j, "eps^2 + q dt <= 0");
    }
    const double theta = qh * dt / denom;
    const double a = theta * kernels.dh * qh;
    const double b = theta * kernels.v_phi * ws.dc[j];
    sys.a[j] = a;
    sys.b[j] = b;
    const double alpha = a - kernels.dh * ws.rb[j] * squeeze_derivative(ws.rb[j], p);
    const auto f = detail::face_flux(alpha, b, ws.dc[j] >= 0.0, ws.q_node[j], ws.q_node[r], dx);
    detail::add_face(m, j, f, s_face);
    const double m_tilde = qh * kernels.dv * flux[j];
    flux[j] = -a * ws.dr[j] + b * ws.phi_old[j] - m_tilde;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t l = wrap(static_cast<std::ptrdiff_t>(j) - 1, n);
    const double rho = s.rho[j];
    sys.rhs[j] = rho + dt * logistic_source(rho, p) + s_face * (flux[j] - flux[l]);
  }
  require_finite(sys.rhs, StepStage::density_solve);
}

void recover(const PhaseArray& gt, const DensityField& rho_new,
             const VelocityKernels& kernels, const Grid1D& grid, StepWorkspace& ws,
             PerturbationField& g_out) {
  const std::size_t n = grid.nx();
  const std::size_t nv = kernels.v.size();
  const double dx = grid.x.dx;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(ws.den[j] > 0.0)) {
      throw NumericalError(StepStage::g_recovery, j, "eps^2/dt + q(rho_{j+1/2}) <= 0");
    }
  }
  // reuse: k_moment <- density-gradient jump, flux <- upwind-flux jump, both over den
  std::vector<double>& ddr = ws.k_moment;
  std::vector<double>& dphi = ws.flux;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, n);
    const double dr_new = (rho_new[r] - rho_new[j]) / dx;
    const double phi_new =
        ws.dc[j] >= 0.0 ? rho_new[j] * ws.q_node[r] : rho_new[r] * ws.q_node[j];
    ddr[j] = ws.qh[j] * (ws.dr[j] - dr_new) / ws.den[j];
    dphi[j] = ws.dc[j] * (phi_new - ws.phi_old[j]) / ws.den[j];
  }
  for (std::size_t k = 0; k < nv; ++k) {
    const double vpsi = kernels.v[k] * kernels.psi0[k];
    const double phi = kernels.phi[k];
    const auto in = gt.row(k);
    auto out = g_out.row(k);
    for (std::size_t j = 0; j < n; ++j) out[j] = in[j] + vpsi * ddr[j] + phi * dphi[j];
  }
  require_finite(g_out.data(), StepStage::g_recovery, n);
}

void check_inputs(const KineticState& s, const VelocityKernels& kernels, const Grid1D& grid,
                  double dt) {
  check_shape(s, grid);
  if (kernels.v.size() != grid.nv()) throw InvalidArgument("kernels do not match grid");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
}

}  // namespace

double upwind_phi(const DensityField& rho_n1, const DensityField& rho_n, double grad_c_half,
                  std::size_t j, const ModelParams& p) {
  const std::size_t r = wrap(static_cast<std::ptrdiff_t>(j) + 1, rho_n.size());
  return grad_c_half >= 0.0 ? rho_n1[j] * upwind_squeeze(rho_n[r], p)
                           : rho_n1[r] * upwind_squeeze(rho_n[j], p);
}

PhaseArray compute_K(const KineticState& state, const VelocityKernels& kernels,
                     const Grid1D& grid, const ModelParams& p) {
  check_shape(state, grid);
  StepWorkspace ws;
  resize(ws, grid.nx(), grid.nv());
  prepare(state, grid, p, 1.0, ws);
  k_term(state.g, kernels, grid.x.dx, ws);
  return ws.k_term;
}

PhaseArray compute_g_tilde(const KineticState& state, const VelocityKernels& kernels,
                           const Grid1D& grid, const ModelParams& p, double dt) {
  check_inputs(state, kernels, grid, dt);
  StepWorkspace ws;
  resize(ws, grid.nx(), grid.nv());
  prepare(state, grid, p, dt, ws);
  k_term(state.g, kernels, grid.x.dx, ws);
  g_tilde(state, kernels, p, dt, ws);
  return ws.g_tilde;
}

DensitySystem assemble_density_system(const KineticState& state, const PhaseArray& g_tilde,
                                      const VelocityKernels& kernels, const Grid1D& grid,
                                      const ModelParams& p, double dt) {
  check_inputs(state, kernels, grid, dt);
  StepWorkspace ws;
  resize(ws, grid.nx(), grid.nv());
  prepare(state, grid, p, dt, ws);
  assemble(state, g_tilde, kernels, grid, p, dt, ws);
  return ws.system;
}

PerturbationField recover_g(const KineticState& state, const PhaseArray& g_tilde,
                            const DensityField& rho_new, const VelocityKernels& kernels,
                            const Grid1D& grid, const ModelParams& p, double dt) {
  check_inputs(state, kernels, grid, dt);
  StepWorkspace ws;
  resize(ws, grid.nx(), grid.nv());
  prepare(state, grid, p, dt, ws);
  PerturbationField g(grid.nv(), grid.nx());
  recover(g_tilde, rho_new, kernels, grid, ws, g);
  return g;
}

KineticState kinetic_step(const KineticState& state, const VelocityKernels& kernels,
                          const Grid1D& grid, const ModelParams& p, double dt) {
  check_inputs(state, kernels, grid, dt);
  StepWorkspace ws;
  resize(ws, grid.nx(), grid.nv());
  KineticState next = state;
  prepare(state, grid, p, dt, ws);
  k_term(state.g, kernels, grid.x.dx, ws);
  g_tilde(state, kernels, p, dt, ws);
  assemble(state, ws.g_tilde, kernels, grid, p, dt, ws);
  next.rho = DensityField(solve_cyclic_tridiagonal(ws.system.matrix, ws.system.rhs));
  require_finite(next.rho.values(), StepStage::density_solve);
  recover(ws.g_tilde, next.rho, kernels, grid, ws, next.g);
  next.c = solve_screened_poisson_1d(next.rho, grid);
  require_finite(next.c.values(), StepStage::chemo_solve);
  next.t = state.t + dt;
  return next;
}

KineticSolver1D::KineticSolver1D(Grid1D grid, ModelParams params, double dt)
    : grid_(grid), params_(params), dt_(dt), kernels_(build_kernels(grid, params)) {
  validate(params_);
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  resize(ws_, grid_.nx(), grid_.nv());
}

void KineticSolver1D::advance(KineticState& state) {
  check_shape(state, grid_);
  prepare(state, grid_, params_, dt_, ws_);
  k_term(state.g, kernels_, grid_.x.dx, ws_);
  g_tilde(state, kernels_, params_, dt_, ws_);
  assemble(state, ws_.g_tilde, kernels_, grid_, params_, dt_, ws_);
  DensityField rho_new(solve_cyclic_tridiagonal(ws_.system.matrix, ws_.system.rhs));
  require_finite(rho_new.values(), StepStage::density_solve);
  recover(ws_.g_tilde, rho_new, kernels_, grid_, ws_, state.g);
  state.rho = std::move(rho_new);
  state.c = solve_screened_poisson_1d(state.rho, grid_);
  require_finite(state.c.values(), StepStage::chemo_solve);
  state.t += dt_;
}

KineticState kinetic_run(KineticState initial, const Grid1D& grid, const ModelParams& p,
                         const RunOptions& options, const SnapshotSink<KineticState>& sink) {
  KineticSolver1D solver(grid, p, options.dt);
  return run_trajectory(
      std::move(initial), options, [&solver](KineticState& s) { solver.advance(s); }, sink);
}

}  // namespace apchemo
