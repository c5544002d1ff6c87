#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "apchemo/grid.hpp"
#include "apchemo/params.hpp"

namespace apchemo::cli {

enum class SolverKind { kinetic, macro_semi_implicit, macro_implicit_d };

const char* to_string(SolverKind s) noexcept;

/// Uniform mesh applied to every spatial and velocity direction.
struct GridSpec {
  double x_min = -20.0;
  double x_max = 20.0;
  double dx = 0.1;
  double v_max = 20.0;
  double dv = 0.2;

  /// Reduced 2D mesh: x in (-5, 5)^2, dx = 0.25, v in (-4, 4)^2, dv = 0.5.
  static GridSpec desk_2d() { return {-5.0, 5.0, 0.25, 4.0, 0.5}; }

  bool operator==(const GridSpec&) const = default;
};

struct InitialSpec {
  double mean = 0.5;
  double amplitude = 0.1;
  std::string file;  ///< optional density profile; overrides mean/amplitude for rho

  bool operator==(const InitialSpec&) const = default;
};

struct RunConfig {
  int dimension = 1;
  SolverKind solver = SolverKind::kinetic;
  GridSpec grid;
  ModelParams model;
  double dt = 1e-4;
  double t_end = 40.0;
  std::size_t snapshot_stride = 1000;
  std::uint64_t seed = 1;
  InitialSpec initial;
  std::string output_dir;
  bool large = false;    ///< allow 2D grids above the desk-scale memory limit
  bool write_g = false;  ///< also dump g at each snapshot (1D kinetic only)

  bool operator==(const RunConfig&) const = default;
};

/// Error in config text. `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// INI text with sections [run], [grid], [model], [initial]. Missing keys take
/// the defaults above, except that [grid] falls back to GridSpec::desk_2d()
/// when dimension = 2. Unknown sections or keys are rejected.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// INI text that parse_config maps back to an identical RunConfig.
std::string emit_config(const RunConfig& config);

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

Grid1D make_grid_1d(const RunConfig& config);
Grid2D make_grid_2d(const RunConfig& config);

/// 17 significant digits, so the text parses back to the same double.
std::string format_double(double x);

}  // namespace apchemo::cli
