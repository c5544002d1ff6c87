#pragma once

#include <cstddef>

#include "apchemo/fields.hpp"
#include "apchemo/grid.hpp"
#include "apchemo/kernels.hpp"
#include "apchemo/linsolve.hpp"
#include "apchemo/params.hpp"
#include "apchemo/trajectory.hpp"

namespace apchemo {

enum class MacroVariant { semi_implicit, implicit_d };

/// Structural facts of the macro matrix used by the positivity argument.
struct MacroMatrixReport {
  bool is_column_diag_dominant = false;
  double min_diagonal = 0.0;
  double max_offdiagonal = 0.0;
  double column_sum_deviation = 0.0;  ///< max_j |sum_i m_ij - 1|
};

/// Macro matrix with the mobility d and the upwind squeeze factors evaluated
/// from `rho_coeff`; the chemo gradient comes from `state`.
CyclicTridiagonal assemble_macro_matrix(const MacroState& state, const DensityField& rho_coeff,
                                        const VelocityKernels& kernels, const Grid1D& grid,
                                        const ModelParams& p, double dt);

/// rho + dt * r0 rho (1 - rho/rho_max)_+
std::vector<double> macro_rhs(const DensityField& rho, const ModelParams& p, double dt);

MacroState macro_step_semi_implicit(const MacroState& state, const VelocityKernels& kernels,
                                    const Grid1D& grid, const ModelParams& p, double dt);

struct PicardInfo {
  std::size_t iterations = 0;  ///< sweeps over all solves
  double last_update = 0.0;
  bool newton = false;        ///< Picard stalled and later sweeps were Newton steps
  bool continuation = false;  ///< the direct solve failed and dt continuation was used
};

/// Mobility and upwind squeeze factors taken at level n+1. Resolved by Picard
/// sweeps (frozen coefficients, one M-matrix solve each) until the update
/// contracts by less than half per sweep, then by residual-damped Newton steps
/// (a Picard sweep replaces any step that fails to reduce the residual), to
/// ||delta rho||_inf < 1e-12 within 50 sweeps. If that fails, the same system
/// is solved for tau dt with tau increasing to 1, each solve seeding the next;
/// ConvergenceError once the tau increment falls below 1/1024.
MacroState macro_step_implicit_d(const MacroState& state, const VelocityKernels& kernels,
                                 const Grid1D& grid, const ModelParams& p, double dt,
                                 PicardInfo* info = nullptr);

MacroMatrixReport mmatrix_report(const MacroState& state, const VelocityKernels& kernels,
                                 const Grid1D& grid, const ModelParams& p, double dt);
MacroMatrixReport mmatrix_report(const CyclicTridiagonal& m);

MacroState macro_step(MacroVariant variant, const MacroState& state,
                      const VelocityKernels& kernels, const Grid1D& grid, const ModelParams& p,
                      double dt);

MacroState macro_run(MacroState initial, MacroVariant variant, const Grid1D& grid,
                     const ModelParams& p, const RunOptions& options,
                     const SnapshotSink<MacroState>& sink = nullptr);

// 2D

struct MacroState2D {
  double t = 0.0;
  DensityField rho;  ///< flat Grid2D::index layout
  ChemoField c;
};

FivePointSystem assemble_macro_matrix_2d(const MacroState2D& state,
                                         const VelocityKernels2D& kernels, const Grid2D& grid,
                                         const ModelParams& p, double dt);

MacroState2D macro_step_2d(const MacroState2D& state, const VelocityKernels2D& kernels,
                           const Grid2D& grid, const ModelParams& p, double dt,
                           SolveInfo* info = nullptr);

MacroState2D macro_run_2d(MacroState2D initial, const Grid2D& grid, const ModelParams& p,
                          const RunOptions& options,
                          const SnapshotSink<MacroState2D>& sink = nullptr);

}  // namespace apchemo
