#pragma once

namespace apchemo {

/// Physical and model constants shared by every solver.
struct ModelParams {
  double gamma = 1.0;    ///< squeezing exponent, >= 1
  double rho_bar = 1.0;  ///< packing density where q vanishes
  double rho_max = 0.5;  ///< logistic carrying capacity, <= rho_bar
  double r0 = 0.1;       ///< proliferation rate
  double A = 20.0;       ///< chemotactic sensitivity
  double epsilon = 0.05; ///< kinetic scaling parameter

  bool operator==(const ModelParams&) const = default;
};

/// Throws InvalidArgument naming the first violated constraint.
void validate(const ModelParams& p);

/// Squeezing probability q(rho) = 1 - (rho/rho_bar)^gamma.
///
/// Defined for any rho; values above rho_bar give q < 0, which the kinetic
/// scheme may transiently produce for finite epsilon.
double squeeze(double rho, const ModelParams& p);

/// max(q(rho), 0): the squeeze factor carried by the upwind chemotactic flux.
/// An overpacked neighbour blocks inflow instead of reversing it, which keeps
/// the implicit density matrices M-matrices when rho exceeds rho_bar.
double upwind_squeeze(double rho, const ModelParams& p);

/// Analytic q'(rho) = -gamma rho^(gamma-1) / rho_bar^gamma.
double squeeze_derivative(double rho, const ModelParams& p);

/// d(rho) = q - rho q' = 1 + (gamma-1)(rho/rho_bar)^gamma.
double mobility_d(double rho, const ModelParams& p);

/// r0 rho (1 - rho/rho_max)_+
double logistic_source(double rho, const ModelParams& p);

}  // namespace apchemo
