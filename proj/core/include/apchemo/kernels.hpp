#pragma once

#include <span>
#include <vector>

#include "apchemo/grid.hpp"
#include "apchemo/params.hpp"

namespace apchemo {

/// Discrete velocity distributions on one velocity axis.
///
/// psi0 is the Gaussian sampled at the nodes and renormalised so that its
/// discrete moment is one; phi(v) = A v psi0(v) so that psi1(v, s) = phi(v) s.
struct VelocityKernels {
  double dv = 0.0;
  std::vector<double> v;
  std::vector<double> psi0;
  std::vector<double> phi;
  double dh = 0.0;     ///< <v^2 psi0>_h
  double v_phi = 0.0;  ///< <v phi>_h, equal to A * dh
};

/// Tensor-product kernels on a 2D velocity grid, flat index k1 * n_v2 + k2.
struct VelocityKernels2D {
  VelocityKernels axis1;
  VelocityKernels axis2;
  std::vector<double> psi0;
  std::vector<double> phi1;
  std::vector<double> phi2;
  double dh1 = 0.0;
  double dh2 = 0.0;
  double v_phi1 = 0.0;
  double v_phi2 = 0.0;

  std::size_t n_v1() const noexcept { return axis1.v.size(); }
  std::size_t n_v2() const noexcept { return axis2.v.size(); }
  double cell() const noexcept { return axis1.dv * axis2.dv; }
};

/// Throws InvalidArgument for a non-symmetric velocity axis.
VelocityKernels build_kernels(const VelocityAxis& axis, const ModelParams& p);
inline VelocityKernels build_kernels(const Grid1D& grid, const ModelParams& p) {
  return build_kernels(grid.v, p);
}
VelocityKernels2D build_kernels(const Grid2D& grid, const ModelParams& p);

/// <eta>_h = dv * sum_k eta_k (plain rectangle rule over all nodes).
double moment(std::span<const double> values, double dv);

/// Pi_h eta = <eta>_h psi0.
std::vector<double> project(std::span<const double> values, const VelocityKernels& kernels);
/// (I - Pi_h) eta.
std::vector<double> project_complement(std::span<const double> values,
                                       const VelocityKernels& kernels);

/// psi1(v_k, grad_c) = phi(v_k) grad_c.
inline double psi1_eval(const VelocityKernels& kernels, std::size_t k, double grad_c) {
  return kernels.phi[k] * grad_c;
}
inline double psi1_eval(const VelocityKernels2D& kernels, std::size_t k, double grad_c1,
                        double grad_c2) {
  return kernels.phi1[k] * grad_c1 + kernels.phi2[k] * grad_c2;
}

}  // namespace apchemo
