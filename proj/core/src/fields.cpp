#include "apchemo/fields.hpp"

#include "apchemo/errors.hpp"
#include "apchemo/kernels.hpp"

namespace apchemo {

std::vector<double> PhaseArray::column(std::size_t j) const {
  std::vector<double> out(n_velocity_);
  for (std::size_t k = 0; k < n_velocity_; ++k) out[k] = (*this)(k, j);
  return out;
}

void check_shape(const KineticState& s, const Grid1D& grid) {
  if (s.rho.size() != grid.nx() || s.c.size() != grid.nx()) {
    throw InvalidArgument("kinetic state: rho/c size does not match grid");
  }
  if (s.g.n_space() != grid.nx() || s.g.n_velocity() != grid.nv()) {
    throw InvalidArgument("kinetic state: g shape does not match grid");
  }
}

void check_shape(const MacroState& s, const Grid1D& grid) {
  if (s.rho.size() != grid.nx() || s.c.size() != grid.nx()) {
    throw InvalidArgument("macro state: rho/c size does not match grid");
  }
}

std::vector<double> half_grid_average(const DensityField& rho) {
  const std::size_t n = rho.size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.5 * (rho[j] + rho[wrap(j + 1, n)]);
  return out;
}

PhaseArray reconstruct_f(const KineticState& state, const VelocityKernels& kernels,
                         double epsilon) {
  const std::size_t n = state.rho.size();
  const std::size_t nv = kernels.psi0.size();
  if (state.g.n_space() != n || state.g.n_velocity() != nv) {
    throw InvalidArgument("reconstruct_f: g shape does not match rho/kernels");
  }
  PhaseArray f(nv, n);
  for (std::size_t k = 0; k < nv; ++k) {
    const auto g = state.g.row(k);
    auto out = f.row(k);
    for (std::size_t j = 0; j < n; ++j) {
      const double g_node = 0.5 * (g[wrap(static_cast<std::ptrdiff_t>(j) - 1, n)] + g[j]);
      out[j] = state.rho[j] * kernels.psi0[k] + epsilon * g_node;
    }
  }
  return f;
}

}  // namespace apchemo
