#pragma once

#include <cstdint>
#include <vector>

#include "apchemo/cli/config.hpp"
#include "apchemo/fields.hpp"
#include "apchemo/kinetic2d.hpp"
#include "apchemo/macro.hpp"

namespace apchemo::cli {

/// PCG32 (pcg_setseq_64_xsh_rr_32): 64-bit LCG state, XSH-RR output.
///
///   state' = state * 6364136223846793005 + inc            (mod 2^64)
///   out    = rotr32(uint32(((state >> 18) ^ state) >> 27), state >> 59)
///
/// Seeding follows the reference pcg32_srandom(initstate, initseq):
/// inc = (initseq << 1) | 1; state = 0; step; state += initstate; step.
/// Output is computed from the state before the step.
class Pcg32 {
 public:
  static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
  /// Stream selector used for initial data: the ASCII bytes of "apchemo".
  static constexpr std::uint64_t default_stream = 0x61706368656d6fULL;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = default_stream);

  std::uint32_t next();

  /// U in (0, 1): 53-bit integer m = (a >> 5) * 2^26 + (b >> 6) from two draws
  /// a, b, then U = (m + 0.5) * 2^-53.
  double uniform_open();

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// u_j = amplitude * (2 U_j - 1) for j = 0..n-1 in order, so |u_j| < amplitude.
std::vector<double> uniform_perturbation(std::uint64_t seed, std::size_t n, double amplitude);

/// rho = mean + u (or the profile file), c = mean, t = 0.
MacroState make_macro_initial(const RunConfig& config, const Grid1D& grid);
KineticState make_kinetic_initial(const RunConfig& config, const Grid1D& grid);
MacroState2D make_macro_initial(const RunConfig& config, const Grid2D& grid);
KineticState2D make_kinetic_initial(const RunConfig& config, const Grid2D& grid);

}  // namespace apchemo::cli
