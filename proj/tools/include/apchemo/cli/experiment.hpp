#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apchemo/cli/config.hpp"

namespace apchemo::cli {

/// Version string written into run metadata.
const char* code_version() noexcept;

/// 2D grids with more nodes than this need `large = true`.
inline constexpr std::size_t desk_node_limit_2d = 64 * 64;
/// 2D kinetic runs whose state exceeds this many bytes need `large = true`.
inline constexpr std::size_t desk_memory_limit = std::size_t{1} << 30;

/// Rough bytes allocated by a run (state plus solver workspace).
std::size_t memory_estimate(const RunConfig& config);

struct RunSummary {
  std::string status = "ok";  ///< "ok" or "failed"
  std::size_t steps_completed = 0;
  double t_final = 0.0;
  double mass = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double k_max = 0.0;  ///< NaN in 2D
  double inv_k_max = 0.0;
  std::size_t pattern_mode = 0;
  bool degenerate = false;
  std::string error;  ///< solver message when status == "failed"
};

/// Output directory: `override` if given, else config.output_dir, else
/// $APCHEMO_OUTPUT_ROOT/<name> (or ./apchemo-output/<name>).
std::filesystem::path resolve_output_dir(const RunConfig& config, const std::string& name,
                                         const std::optional<std::filesystem::path>& override);

/// Runs one configuration and writes metadata.ini, snapshots.csv, energy.csv,
/// summary.csv (and g.csv when write_g) into `dir`. Solver failures end the run
/// early and are recorded in metadata and summary rather than thrown; I/O and
/// configuration errors throw. `log` receives progress lines when non-null.
RunSummary run_experiment(const RunConfig& config, const std::filesystem::path& dir,
                          std::ostream* log = nullptr);

enum class SweepAxis { epsilon, A, seed };

const char* to_string(SweepAxis a) noexcept;
SweepAxis parse_axis(const std::string& text);

struct SweepRow {
  std::size_t index = 0;
  double value = 0.0;
  std::string status;
  double rel_l2_error = 0.0;  ///< final rho vs the macro reference with the same seed and grid
  double inv_k_max = 0.0;
  double ref_inv_k_max = 0.0;
  std::string run_dir;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double mean_inv_k_max = 0.0;      ///< over rows with status ok
  double mean_ref_inv_k_max = 0.0;
  std::optional<double> order;      ///< fitted convergence order for an epsilon sweep
  std::filesystem::path table;
};

/// Runs `base` once per value of `axis` (seed shared unless the axis is seed)
/// on `jobs` worker threads, regenerates the macro semi-implicit reference for
/// each distinct (seed, A), and writes sweep.csv with one row per value plus a
/// final "mean" row. Individual run failures are marked in the table.
SweepResult sweep(const RunConfig& base, SweepAxis axis, std::span<const double> values,
                  const std::filesystem::path& dir, std::size_t jobs);

/// Human-readable digest of a run or sweep directory (schemas validated on read).
std::string report(const std::filesystem::path& dir);

}  // namespace apchemo::cli
