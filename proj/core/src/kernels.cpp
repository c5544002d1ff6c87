#include "apchemo/kernels.hpp"

#include <cmath>
#include <numbers>

#include "apchemo/errors.hpp"

namespace apchemo {

double moment(std::span<const double> values, double dv) {
  double sum = 0.0;
  for (double x : values) sum += x;
  return dv * sum;
}

VelocityKernels build_kernels(const VelocityAxis& axis, const ModelParams& p) {
  if (!axis.is_symmetric()) {
    throw InvalidArgument("build_kernels: velocity grid must satisfy v_min == -v_max");
  }
  VelocityKernels k;
  const std::size_t n = axis.count();
  k.dv = axis.dv;
  k.v.resize(n);
  k.psi0.resize(n);
  k.phi.resize(n);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    k.v[i] = axis.node(i);
    k.psi0[i] = norm * std::exp(-0.5 * k.v[i] * k.v[i]);
  }
  const double mass = moment(k.psi0, k.dv);
  for (double& x : k.psi0) x /= mass;

  std::vector<double> v2psi(n);
  std::vector<double> vphi(n);
  for (std::size_t i = 0; i < n; ++i) {
    k.phi[i] = p.A * k.v[i] * k.psi0[i];
    v2psi[i] = k.v[i] * k.v[i] * k.psi0[i];
    vphi[i] = k.v[i] * k.phi[i];
  }
  k.dh = moment(v2psi, k.dv);
  k.v_phi = moment(vphi, k.dv);
  return k;
}

VelocityKernels2D build_kernels(const Grid2D& grid, const ModelParams& p) {
  VelocityKernels2D k;
  k.axis1 = build_kernels(grid.v1, p);
  k.axis2 = build_kernels(grid.v2, p);
  const std::size_t n1 = k.n_v1();
  const std::size_t n2 = k.n_v2();
  k.psi0.resize(n1 * n2);
  k.phi1.resize(n1 * n2);
  k.phi2.resize(n1 * n2);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      k.psi0[a * n2 + b] = k.axis1.psi0[a] * k.axis2.psi0[b];
    }
  }
  const double mass = moment(k.psi0, k.cell());
  for (double& x : k.psi0) x /= mass;

  double dh1 = 0.0, dh2 = 0.0, vphi1 = 0.0, vphi2 = 0.0;
  for (std::size_t a = 0; a < n1; ++a) {
    const double v1 = k.axis1.v[a];
    for (std::size_t b = 0; b < n2; ++b) {
      const double v2 = k.axis2.v[b];
      const std::size_t i = a * n2 + b;
      k.phi1[i] = p.A * v1 * k.psi0[i];
      k.phi2[i] = p.A * v2 * k.psi0[i];
      dh1 += v1 * v1 * k.psi0[i];
      dh2 += v2 * v2 * k.psi0[i];
      vphi1 += v1 * k.phi1[i];
      vphi2 += v2 * k.phi2[i];
    }
  }
  k.dh1 = dh1 * k.cell();
  k.dh2 = dh2 * k.cell();
  k.v_phi1 = vphi1 * k.cell();
  k.v_phi2 = vphi2 * k.cell();
  return k;
}

std::vector<double> project(std::span<const double> values, const VelocityKernels& kernels) {
  if (values.size() != kernels.psi0.size()) {
    throw InvalidArgument("project: array length does not match velocity grid");
  }
  const double m = moment(values, kernels.dv);
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = m * kernels.psi0[k];
  return out;
}

std::vector<double> project_complement(std::span<const double> values,
                                       const VelocityKernels& kernels) {
  auto out = project(values, kernels);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = values[k] - out[k];
  return out;
}

}  // namespace apchemo
