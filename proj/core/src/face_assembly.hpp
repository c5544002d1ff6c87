#pragma once

// Implicit face flux shared by the kinetic density system and the macro schemes:
//   F = -alpha (rho_R - rho_L)/h + beta * Phi,
//   Phi = rho_L q(rho_R^n) if the chemo gradient is >= 0, else rho_R q(rho_L^n).
// The flux leaves node L and enters node R, so every column sum of the
// assembled matrix stays equal to the diagonal identity contribution.

#include <cstddef>

#include "apchemo/linsolve.hpp"

namespace apchemo::detail {

struct FaceCoefficients {
  double on_left;
  double on_right;
};

inline FaceCoefficients face_flux(double alpha, double beta, bool gradient_nonneg, double q_left,
                                  double q_right, double h) {
  return {alpha / h + (gradient_nonneg ? beta * q_right : 0.0),
          -alpha / h + (gradient_nonneg ? 0.0 : beta * q_left)};
}

/// Adds s * (F_{j+1/2} - F_{j-1/2}) for the face between node j and j+1 (wrapped).
inline void add_face(CyclicTridiagonal& m, std::size_t j, FaceCoefficients f, double s) {
  const std::size_t n = m.size();
  const std::size_t r = j + 1 == n ? 0 : j + 1;
  m.diag[j] += s * f.on_left;
  m.upper[j] += s * f.on_right;
  m.lower[r] -= s * f.on_left;
  m.diag[r] -= s * f.on_right;
}

/// Face between flat nodes l and r along direction 1 (r = east of l) or 2 (r = north of l).
inline void add_face(FivePointSystem& m, int direction, std::size_t l, std::size_t r,
                     FaceCoefficients f, double s) {
  m.diag[l] += s * f.on_left;
  m.diag[r] -= s * f.on_right;
  if (direction == 1) {
    m.east[l] += s * f.on_right;
    m.west[r] -= s * f.on_left;
  } else {
    m.north[l] += s * f.on_right;
    m.south[r] -= s * f.on_left;
  }
}

/// Explicit evaluation of the same flux.
inline double face_flux_value(FaceCoefficients f, double rho_left, double rho_right) {
  return f.on_left * rho_left + f.on_right * rho_right;
}

}  // namespace apchemo::detail
