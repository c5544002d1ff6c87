#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "apchemo/fields.hpp"
#include "apchemo/grid.hpp"
#include "apchemo/kernels.hpp"
#include "apchemo/params.hpp"

namespace apchemo {

/// H(rho) = (Dh / <v phi>_h) ln(rho / q(rho)), which reduces to ln(rho/q)/A.
/// DomainError outside (0, rho_bar) or when A == 0.
double entropy_H(double rho, const ModelParams& p, const VelocityKernels& kernels);

/// Antiderivative of H with Phi(0) = 0.
///
/// Phi(rho) = (Dh/<v phi>_h) [rho ln rho - rho - G(rho)] with G = int_0^rho ln q.
/// G splits into the closed-form log(1 - x) part plus rho_bar * J(rho/rho_bar),
/// J(y) = int_0^y ln((1 - x^gamma)/(1 - x)) dx, whose smooth integrand is
/// expanded once in Chebyshev polynomials (in t = sqrt(x)) and integrated
/// term by term. Construction is O(n^2); each evaluation is O(n).
class EntropyPhi {
 public:
  EntropyPhi(const ModelParams& p, const VelocityKernels& kernels);

  /// DomainError for rho < 0 or rho >= rho_bar.
  double operator()(double rho) const;
  /// J(y) for y in [0, 1].
  double log_ratio_integral(double y) const;

 private:
  double gamma_;
  double rho_bar_;
  double scale_;
  std::vector<double> coeffs_;  ///< Chebyshev series of the antiderivative on t in [0, 1]
};

/// Convenience wrapper that reuses a cached EntropyPhi per (gamma, rho_bar, scale).
double entropy_Phi(double rho, const ModelParams& p, const VelocityKernels& kernels);

struct EnergyRecord {
  double t = 0.0;
  double E = 0.0;
  double phi_integral = 0.0;          ///< dx * sum Phi(rho_j)
  double interaction_integral = 0.0;  ///< dx * sum rho_j c_j; E = phi - interaction / 2
};

/// Rectangle-rule energy on a periodic 1D grid.
EnergyRecord energy(const DensityField& rho, const ChemoField& c, const SpatialAxis& axis,
                    const EntropyPhi& phi);
EnergyRecord energy(const DensityField& rho, const ChemoField& c, const Grid1D& grid,
                    const ModelParams& p, const VelocityKernels& kernels);
EnergyRecord energy(const DensityField& rho, const ChemoField& c, const Grid2D& grid,
                    const EntropyPhi& phi);

/// ||a - b||_2 / ||a||_2; InvalidArgument on size mismatch or zero ||a||.
double relative_l2_error(const DensityField& a, const DensityField& b);

struct PatternReport {
  std::size_t mode = 0;        ///< winning integer mode m
  double k_max = 0.0;          ///< m / L, cycles per unit length
  double inv_k_max = 0.0;      ///< L / m
  std::vector<double> spectrum;  ///< |rho_hat_m| for m = 0 .. n/2
  bool degenerate = false;     ///< all nonzero modes below 1e-12 |rho_hat_0|
};

/// Dominant nonzero Fourier mode of a periodic profile (n >= 4).
PatternReport pattern_wavenumber(const DensityField& rho, const SpatialAxis& axis);

/// d/drho of r0 rho (1 - rho/rho_max)_+; at rho == rho_max the interior
/// (left) derivative -r0 is used.
double logistic_derivative(double rho_s, const ModelParams& p);

/// Linear growth rate of the mode cos(k x) about the homogeneous state rho_s:
/// -Dh d(rho_s) k^2 + <v phi>_h rho_s q(rho_s) k^2/(1 + k^2) + logistic_derivative(rho_s).
double dispersion_growth_rate(double k, double rho_s, const ModelParams& p,
                              const VelocityKernels& kernels);

struct UnstableMode {
  double k = 0.0;        ///< angular wavenumber maximising the growth rate (0 if none)
  double growth = 0.0;   ///< growth rate at k
};

/// Maximiser of dispersion_growth_rate over k >= 0 (closed form in k^2).
UnstableMode most_unstable_mode(double rho_s, const ModelParams& p,
                                const VelocityKernels& kernels);

/// Sensitivity A at which the maximal growth rate crosses zero, found by a
/// bracketing root search on A (kernels are rebuilt with the trial A).
double critical_sensitivity(double rho_s, const ModelParams& p, const VelocityAxis& v_axis);

/// Least-squares slope of log(err) against log(eps).
double convergence_order(std::span<const double> eps, std::span<const double> err);

}  // namespace apchemo
