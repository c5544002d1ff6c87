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

/// 2D kinetic state. g1 lives on x1-faces (j1+1/2, j2), g2 on x2-faces
/// (j1, j2+1/2); both use the flat spatial index j1 * n2 + j2 and the flat
/// velocity index k1 * n_v2 + k2.
struct KineticState2D {
  double t = 0.0;
  DensityField rho;
  PhaseArray g1;
  PhaseArray g2;
  ChemoField c;
};

void check_shape(const KineticState2D& s, const Grid2D& grid);

enum class FaceKind { x1, x2 };

/// Value at the cell corner (j1+1/2, j2+1/2): mean of the four surrounding nodes.
double corner_average(std::span<const double> field, const Grid2D& grid, std::size_t j1,
                      std::size_t j2);

/// Upwind rho q(rho) in `direction` (1 or 2) at the face (j1, j2) of kind `face`.
/// Along the face normal the two neighbours are nodes; across it they are the
/// two adjacent cell corners. The ">= 0" branch takes the lower neighbour's
/// rho^{n1} and the upper neighbour's q(rho^n).
double upwind_phi_2d(int direction, FaceKind face, const DensityField& rho_n1,
                     const DensityField& rho_n, double grad_c_component, std::size_t j1,
                     std::size_t j2, const Grid2D& grid, const ModelParams& p);

/// Scratch arrays for one 2D step.
struct StepWorkspace2D {
  struct Faces {
    std::vector<double> rb, q, den, growth;
    std::vector<double> dr_n, dr_t;  ///< density gradient normal / tangential to the face
    std::vector<double> dc_n, dc_t;
    std::vector<double> phi_n, phi_t;  ///< upwind flux along / across, level (n, n)
    std::vector<double> d11, d12, d22;  ///< drift double differences
    std::vector<double> k_moment, flux;
    std::vector<double> e1, e2, e3, e4;  ///< recovery coefficients
    PhaseArray k_term;
    PhaseArray g_tilde;
  };
  std::vector<double> q_node, w_node1, w_node2;
  std::vector<double> rho_corner, c_corner, q_corner, w_corner1, w_corner2;
  std::vector<double> buffer;
  Faces f1, f2;
  FivePointSystem system;
  std::vector<double> rhs;
  SolveInfo last_solve;
};

class KineticSolver2D {
 public:
  KineticSolver2D(Grid2D grid, ModelParams params, double dt);

  const Grid2D& grid() const noexcept { return grid_; }
  const VelocityKernels2D& kernels() const noexcept { return kernels_; }
  const StepWorkspace2D& workspace() const noexcept { return ws_; }

  void advance(KineticState2D& state);

 private:
  Grid2D grid_;
  ModelParams params_;
  double dt_;
  VelocityKernels2D kernels_;
  StepWorkspace2D ws_;
  std::vector<std::size_t> prev1_, next1_, prev2_, next2_;
};

KineticState2D kinetic_step_2d(const KineticState2D& state, const VelocityKernels2D& kernels,
                               const Grid2D& grid, const ModelParams& p, double dt);

KineticState2D kinetic_run_2d(KineticState2D initial, const Grid2D& grid, const ModelParams& p,
                              const RunOptions& options,
                              const SnapshotSink<KineticState2D>& sink = nullptr);

/// Bytes held by a 2D kinetic state plus step workspace on `grid`.
std::size_t kinetic2d_memory_estimate(const Grid2D& grid);

}  // namespace apchemo
