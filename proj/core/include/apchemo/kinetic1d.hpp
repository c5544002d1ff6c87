#pragma once

#include <cstddef>
#include <vector>

#include "apchemo/fields.hpp"
#include "apchemo/grid.hpp"
#include "apchemo/kernels.hpp"
#include "apchemo/linsolve.hpp"
#include "apchemo/params.hpp"
#include "apchemo/trajectory.hpp"

namespace apchemo {

/// Upwind approximation of rho q(rho) at x_{j+1/2}:
/// rho_j^{n1} q(rho_{j+1}^n) when grad_c_half >= 0, otherwise rho_{j+1}^{n1} q(rho_j^n).
double upwind_phi(const DensityField& rho_n1, const DensityField& rho_n, double grad_c_half,
                  std::size_t j, const ModelParams& p);

/// Transport and drift operator K at every (velocity, half node).
PhaseArray compute_K(const KineticState& state, const VelocityKernels& kernels,
                     const Grid1D& grid, const ModelParams& p);

/// Explicit predictor g~ at t_{n+1}. Throws NumericalError(g_tilde, j) when
/// eps^2/dt + q(rho_{j+1/2}) <= 0.
PhaseArray compute_g_tilde(const KineticState& state, const VelocityKernels& kernels,
                           const Grid1D& grid, const ModelParams& p, double dt);

/// Density system scaled by dt: matrix = I + dt * (flux divergence), rhs = dt * r.
struct DensitySystem {
  CyclicTridiagonal matrix;
  std::vector<double> rhs;
  std::vector<double> a;  ///< diffusion coefficient per half node
  std::vector<double> b;  ///< chemotactic coefficient per half node
};

DensitySystem assemble_density_system(const KineticState& state, const PhaseArray& g_tilde,
                                      const VelocityKernels& kernels, const Grid1D& grid,
                                      const ModelParams& p, double dt);

PerturbationField recover_g(const KineticState& state, const PhaseArray& g_tilde,
                            const DensityField& rho_new, const VelocityKernels& kernels,
                            const Grid1D& grid, const ModelParams& p, double dt);

/// One step: g~, density solve, g recovery, chemoattractant solve.
KineticState kinetic_step(const KineticState& state, const VelocityKernels& kernels,
                          const Grid1D& grid, const ModelParams& p, double dt);

/// Scratch arrays of one step, reused across steps by KineticSolver1D.
struct StepWorkspace {
  std::vector<double> rb;          ///< half-node density average
  std::vector<double> qh;          ///< q at the half-node average
  std::vector<double> q_node;      ///< q at nodes (upwind flux)
  std::vector<double> dr;          ///< density gradient at half nodes
  std::vector<double> dc;          ///< chemo gradient at half nodes
  std::vector<double> phi_old;     ///< upwind flux at level (n, n)
  std::vector<double> drift;       ///< drift double difference at half nodes
  std::vector<double> den;         ///< eps^2/dt + q
  std::vector<double> k_moment;    ///< <K>_h per half node
  std::vector<double> flux;        ///< explicit face flux of the right-hand side
  std::vector<double> ext;         ///< ghosted row buffer
  PhaseArray k_term;
  PhaseArray g_tilde;
  DensitySystem system;
};

/// Reusable stepper that keeps its scratch arrays between steps.
class KineticSolver1D {
 public:
  KineticSolver1D(Grid1D grid, ModelParams params, double dt);

  const Grid1D& grid() const noexcept { return grid_; }
  const VelocityKernels& kernels() const noexcept { return kernels_; }
  const ModelParams& params() const noexcept { return params_; }
  double dt() const noexcept { return dt_; }

  void advance(KineticState& state);

 private:
  Grid1D grid_;
  ModelParams params_;
  double dt_;
  VelocityKernels kernels_;
  StepWorkspace ws_;
};

/// Runs kinetic steps to options.t_end; sink sees step 0, every stride, and the last step.
KineticState kinetic_run(KineticState initial, const Grid1D& grid, const ModelParams& p,
                         const RunOptions& options,
                         const SnapshotSink<KineticState>& sink = nullptr);

}  // namespace apchemo
