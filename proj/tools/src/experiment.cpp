#include "apchemo/cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "apchemo/analysis.hpp"
#include "apchemo/cli/csv.hpp"
#include "apchemo/cli/initial.hpp"
#include "apchemo/errors.hpp"
#include "apchemo/kinetic1d.hpp"
#include "apchemo/kinetic2d.hpp"
#include "apchemo/macro.hpp"
#include "apchemo/trajectory.hpp"

#ifndef APCHEMO_VERSION
#define APCHEMO_VERSION "unknown"
#endif

namespace apchemo::cli {

namespace fs = std::filesystem;

const char* code_version() noexcept { return APCHEMO_VERSION; }

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

RunOptions options_of(const RunConfig& c) { return RunOptions{c.dt, c.t_end, c.snapshot_stride}; }

double safe_energy(const DensityField& rho, const ChemoField& c, const EntropyPhi& phi,
                   const auto& where, EnergyRecord& out) {
  try {
    out = energy(rho, c, where, phi);
  } catch (const DomainError&) {
    out = EnergyRecord{0.0, nan, nan, nan};
  }
  return out.E;
}

void fill_ranges(const DensityField& rho, double cell, RunSummary& s) {
  double sum = 0.0;
  s.rho_min = std::numeric_limits<double>::infinity();
  s.rho_max = -std::numeric_limits<double>::infinity();
  for (double r : rho.values()) {
    sum += r;
    s.rho_min = std::min(s.rho_min, r);
    s.rho_max = std::max(s.rho_max, r);
  }
  s.mass = cell * sum;
}

void write_metadata(const fs::path& dir, const RunConfig& config, const RunSummary& s,
                    std::optional<std::size_t> failed_step) {
  std::ofstream out(dir / "metadata.ini");
  if (!out) throw CsvError("cannot write '" + (dir / "metadata.ini").string() + "'");
  out << emit_config(config) << "\n[meta]\n"
      << "code_version = " << code_version() << "\n"
      << "seed = " << config.seed << "\n"
      << "status = " << s.status << "\n"
      << "steps_completed = " << s.steps_completed << "\n"
      << "failed_step = " << (failed_step ? std::to_string(*failed_step) : std::string()) << "\n"
      << "error = " << s.error << "\n";
}

void write_summary(const fs::path& dir, const RunSummary& s) {
  CsvWriter w(dir / "summary.csv", summary_schema());
  w << s.status << s.steps_completed << s.t_final << s.mass << s.rho_min << s.rho_max << s.k_max
    << s.inv_k_max << s.pattern_mode << std::size_t{s.degenerate ? 1u : 0u};
  w.end_row();
}

// Drives one trajectory, records every snapshot and converts solver failures
// into a failed summary built from the last recorded state.
template <class State, class Record, class Finish>
RunSummary drive(const RunConfig& config, State initial, auto&& step, Record&& record,
                 Finish&& finish, const fs::path& dir, std::ostream* log) {
  const auto options = options_of(config);
  const std::size_t total = step_count(options);
  State last = initial;
  RunSummary summary;
  std::optional<std::size_t> failed_step;
  SnapshotSink<State> sink = [&](std::size_t i, const State& s) {
    record(i, s);
    last = s;
    if (log) *log << "step " << i << "/" << total << " t=" << s.t << "\n";
  };
  try {
    run_trajectory(std::move(initial), options, step, sink);
    summary.steps_completed = total;
  } catch (const RunAborted& e) {
    summary.status = "failed";
    summary.error = e.what();
    summary.steps_completed = e.step() - 1;
    failed_step = e.step();
    if (log) *log << "run failed: " << e.what() << "\n";
  }
  finish(last, summary);
  summary.t_final = last.t;
  write_summary(dir, summary);
  write_metadata(dir, config, summary, failed_step);
  return summary;
}

RunSummary run_1d(const RunConfig& config, const fs::path& dir, std::ostream* log) {
  const auto grid = make_grid_1d(config);
  const auto& p = config.model;
  const auto kernels = build_kernels(grid, p);
  const EntropyPhi phi(p, kernels);
  CsvWriter snaps(dir / "snapshots.csv", snapshot1d_schema());
  CsvWriter energies(dir / "energy.csv", energy_schema());
  std::optional<CsvWriter> gslice;
  if (config.write_g) gslice.emplace(dir / "g.csv", gslice_schema());

  auto record_fields = [&](std::size_t i, double t, const DensityField& rho, const ChemoField& c) {
    for (std::size_t j = 0; j < grid.nx(); ++j) {
      snaps << i << t << j << grid.x.node(j) << rho[j] << c[j];
      snaps.end_row();
    }
    // energy of rho with its elliptic c; differs from the state's c only at step 0
    EnergyRecord e;
    safe_energy(rho, solve_screened_poisson_1d(rho, grid), phi, grid.x, e);
    double sum = 0.0;
    for (double r : rho.values()) sum += r;
    energies << i << t << e.E << e.phi_integral << e.interaction_integral << grid.x.dx * sum;
    energies.end_row();
  };
  auto finish = [&](const auto& s, RunSummary& summary) {
    fill_ranges(s.rho, grid.x.dx, summary);
    const auto pattern = pattern_wavenumber(s.rho, grid.x);
    summary.k_max = pattern.k_max;
    summary.inv_k_max = pattern.inv_k_max;
    summary.pattern_mode = pattern.mode;
    summary.degenerate = pattern.degenerate;
    snaps.flush();
    energies.flush();
  };

  if (config.solver == SolverKind::kinetic) {
    KineticSolver1D solver(grid, p, config.dt);
    auto record = [&](std::size_t i, const KineticState& s) {
      record_fields(i, s.t, s.rho, s.c);
      if (!gslice) return;
      for (std::size_t k = 0; k < grid.nv(); ++k) {
        for (std::size_t j = 0; j < grid.nx(); ++j) {
          *gslice << i << s.t << j << grid.x.half_node(j) << k << kernels.v[k] << s.g(k, j);
          gslice->end_row();
        }
      }
    };
    return drive(config, make_kinetic_initial(config, grid),
                 [&](KineticState& s) { solver.advance(s); }, record, finish, dir, log);
  }
  const auto variant = config.solver == SolverKind::macro_implicit_d ? MacroVariant::implicit_d
                                                                    : MacroVariant::semi_implicit;
  auto record = [&](std::size_t i, const MacroState& s) { record_fields(i, s.t, s.rho, s.c); };
  return drive(
      config, make_macro_initial(config, grid),
      [&](MacroState& s) { s = macro_step(variant, s, kernels, grid, p, config.dt); }, record,
      finish, dir, log);
}

RunSummary run_2d(const RunConfig& config, const fs::path& dir, std::ostream* log) {
  const auto grid = make_grid_2d(config);
  const auto& p = config.model;
  const auto kernels = build_kernels(grid, p);
  const EntropyPhi phi(p, kernels.axis1);
  const double cell = grid.x1.dx * grid.x2.dx;
  CsvWriter snaps(dir / "snapshots.csv", snapshot2d_schema());
  CsvWriter energies(dir / "energy.csv", energy_schema());

  auto record_fields = [&](std::size_t i, double t, const DensityField& rho, const ChemoField& c) {
    for (std::size_t j1 = 0; j1 < grid.n1(); ++j1) {
      for (std::size_t j2 = 0; j2 < grid.n2(); ++j2) {
        const auto l = grid.index(j1, j2);
        snaps << i << t << j1 << j2 << grid.x1.node(j1) << grid.x2.node(j2) << rho[l] << c[l];
        snaps.end_row();
      }
    }
    EnergyRecord e;
    safe_energy(rho, solve_screened_poisson_2d(rho, grid), phi, grid, e);
    double sum = 0.0;
    for (double r : rho.values()) sum += r;
    energies << i << t << e.E << e.phi_integral << e.interaction_integral << cell * sum;
    energies.end_row();
  };
  auto finish = [&](const auto& s, RunSummary& summary) {
    fill_ranges(s.rho, cell, summary);
    summary.k_max = nan;
    summary.inv_k_max = nan;
    snaps.flush();
    energies.flush();
  };

  if (config.solver == SolverKind::kinetic) {
    KineticSolver2D solver(grid, p, config.dt);
    auto record = [&](std::size_t i, const KineticState2D& s) {
      record_fields(i, s.t, s.rho, s.c);
    };
    return drive(config, make_kinetic_initial(config, grid),
                 [&](KineticState2D& s) { solver.advance(s); }, record, finish, dir, log);
  }
  auto record = [&](std::size_t i, const MacroState2D& s) { record_fields(i, s.t, s.rho, s.c); };
  return drive(
      config, make_macro_initial(config, grid),
      [&](MacroState2D& s) { s = macro_step_2d(s, kernels, grid, p, config.dt); }, record,
      finish, dir, log);
}

}  // namespace

std::size_t memory_estimate(const RunConfig& config) {
  constexpr std::size_t d = sizeof(double);
  if (config.dimension == 1) {
    const auto grid = make_grid_1d(config);
    const std::size_t nx = grid.nx();
    if (config.solver == SolverKind::kinetic) return d * (5 * grid.nv() * nx + 24 * nx);
    return d * 16 * nx;
  }
  const auto grid = make_grid_2d(config);
  if (config.solver == SolverKind::kinetic) return kinetic2d_memory_estimate(grid);
  const std::size_t nodes = grid.nodes();
  std::size_t doubles = 16 * nodes;
  doubles += nodes <= dense_solve_limit ? nodes * nodes : 60 * nodes;
  return d * doubles;
}

fs::path resolve_output_dir(const RunConfig& config, const std::string& name,
                            const std::optional<fs::path>& override) {
  if (override) return *override;
  if (!config.output_dir.empty()) return config.output_dir;
  const char* root = std::getenv("APCHEMO_OUTPUT_ROOT");
  return fs::path(root && *root ? root : "apchemo-output") / name;
}

RunSummary run_experiment(const RunConfig& config, const fs::path& dir, std::ostream* log) {
  validate(config);
  if (config.dimension == 2) {
    const auto grid = make_grid_2d(config);
    const std::size_t bytes = memory_estimate(config);
    if (log) {
      *log << "2D grid " << grid.n1() << "x" << grid.n2() << " nodes, " << grid.nv()
           << " velocities: estimated memory " << (bytes >> 20) << " MiB\n";
    }
    if (!config.large && (grid.nodes() > desk_node_limit_2d || bytes > desk_memory_limit)) {
      throw ConfigError("field 'run.large': 2D grid of " + std::to_string(grid.nodes()) +
                        " nodes (about " + std::to_string(bytes >> 20) +
                        " MiB) exceeds the desk-scale limit; set large = true");
    }
  }
  fs::create_directories(dir);
  return config.dimension == 1 ? run_1d(config, dir, log) : run_2d(config, dir, log);
}

const char* to_string(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::epsilon: return "epsilon";
    case SweepAxis::A: return "A";
    case SweepAxis::seed: return "seed";
  }
  return "?";
}

SweepAxis parse_axis(const std::string& text) {
  for (auto a : {SweepAxis::epsilon, SweepAxis::A, SweepAxis::seed}) {
    if (text == to_string(a)) return a;
  }
  throw ConfigError("unknown sweep axis '" + text + "' (expected epsilon, A or seed)");
}

namespace {

RunConfig with_axis(RunConfig c, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::epsilon: c.model.epsilon = value; break;
    case SweepAxis::A: c.model.A = value; break;
    case SweepAxis::seed:
      if (!(value >= 0.0) || value != std::floor(value) || value > 0x1p53) {
        throw ConfigError("sweep seed values must be non-negative integers");
      }
      c.seed = static_cast<std::uint64_t>(value);
      break;
  }
  return c;
}

struct Job {
  RunConfig config;
  fs::path dir;
  RunSummary summary;
  std::string error;  ///< set when the run threw (I/O, configuration)
};

void run_pool(std::vector<Job>& jobs, std::size_t width) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        jobs[i].summary = run_experiment(jobs[i].config, jobs[i].dir);
      } catch (const std::exception& e) {
        jobs[i].error = e.what();
      }
    }
  };
  width = std::clamp<std::size_t>(width, 1, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < width; ++w) pool.emplace_back(worker);
  worker();
}

// Final snapshot of rho read back from a run directory.
DensityField final_density(const fs::path& dir, int dimension) {
  const auto table = read_csv(dir / "snapshots.csv",
                              dimension == 1 ? snapshot1d_schema() : snapshot2d_schema());
  if (table.rows.empty()) throw CsvError((dir / "snapshots.csv").string() + ": no rows");
  const std::size_t last = table.count(table.rows.size() - 1, "step");
  std::vector<double> rho;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.count(r, "step") == last) rho.push_back(table.number(r, "rho"));
  }
  return DensityField(std::move(rho));
}

double read_inv_k_max(const fs::path& dir) {
  const auto table = read_csv(dir / "summary.csv", summary_schema());
  return table.number(0, "inv_k_max");
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return nan;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

SweepResult sweep(const RunConfig& base, SweepAxis axis, std::span<const double> values,
                  const fs::path& dir, std::size_t jobs) {
  validate(base);
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "sweep_config.ini");
    out << emit_config(base) << "\n[sweep]\naxis = " << to_string(axis) << "\nvalues =";
    for (double v : values) out << ' ' << format_double(v);
    out << "\n";
  }
  std::vector<Job> work;
  std::vector<std::size_t> ref_of(values.size());
  std::map<std::pair<std::uint64_t, double>, std::size_t> refs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto cfg = with_axis(base, axis, values[i]);
    validate(cfg);
    work.push_back({cfg, dir / ("run_" + std::to_string(i)), {}, {}});
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    RunConfig ref = work[i].config;
    ref.solver = SolverKind::macro_semi_implicit;
    ref.write_g = false;
    const auto key = std::make_pair(ref.seed, ref.model.A);
    auto it = refs.find(key);
    if (it == refs.end()) {
      const std::size_t r = refs.size();
      it = refs.emplace(key, work.size()).first;
      work.push_back({ref, dir / ("reference_" + std::to_string(r)), {}, {}});
    }
    ref_of[i] = it->second;
  }
  run_pool(work, jobs);

  SweepResult result;
  std::vector<double> inv, ref_inv, eps_ok, err_ok;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Job& run = work[i];
    const Job& ref = work[ref_of[i]];
    SweepRow row;
    row.index = i;
    row.value = values[i];
    row.run_dir = run.dir.filename().string();
    row.rel_l2_error = row.inv_k_max = row.ref_inv_k_max = nan;
    if (!run.error.empty()) {
      row.status = "error";
    } else if (run.summary.status != "ok") {
      row.status = "failed";
    } else if (!ref.error.empty() || ref.summary.status != "ok") {
      row.status = "reference_failed";
    } else {
      row.status = "ok";
      const auto a = final_density(ref.dir, base.dimension);
      const auto b = final_density(run.dir, base.dimension);
      row.rel_l2_error = relative_l2_error(a, b);
      row.inv_k_max = read_inv_k_max(run.dir);
      row.ref_inv_k_max = read_inv_k_max(ref.dir);
      inv.push_back(row.inv_k_max);
      ref_inv.push_back(row.ref_inv_k_max);
      if (row.rel_l2_error > 0.0) {
        eps_ok.push_back(work[i].config.model.epsilon);
        err_ok.push_back(row.rel_l2_error);
      }
    }
    result.rows.push_back(row);
  }
  result.mean_inv_k_max = mean_of(inv);
  result.mean_ref_inv_k_max = mean_of(ref_inv);
  if (axis == SweepAxis::epsilon && eps_ok.size() >= 2) {
    try {
      result.order = convergence_order(eps_ok, err_ok);
    } catch (const InvalidArgument&) {
    }
  }

  result.table = dir / "sweep.csv";
  CsvWriter w(result.table, sweep_schema());
  for (const auto& row : result.rows) {
    w << std::to_string(row.index) << to_string(axis) << row.value << row.status
      << row.rel_l2_error << row.inv_k_max << row.ref_inv_k_max << row.run_dir;
    w.end_row();
  }
  std::vector<double> errs;
  for (const auto& row : result.rows) {
    if (row.status == "ok") errs.push_back(row.rel_l2_error);
  }
  w << std::string_view("mean") << to_string(axis) << nan
    << std::string_view(inv.size() == result.rows.size() ? "ok" : "partial") << mean_of(errs)
    << result.mean_inv_k_max << result.mean_ref_inv_k_max << std::string_view("");
  w.end_row();
  return result;
}

std::string report(const fs::path& dir) {
  std::ostringstream out;
  out << std::setprecision(6);
  if (fs::exists(dir / "sweep.csv")) {
    const auto table = read_csv(dir / "sweep.csv", sweep_schema());
    out << "sweep " << dir.string() << "\n";
    out << "index  axis     value         status  rel_l2_error  inv_k_max     ref_inv_k_max\n";
    std::vector<double> eps, err;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      out << std::left << std::setw(7) << table.text(r, "index") << std::setw(9)
          << table.text(r, "axis") << std::setw(14) << table.number(r, "value") << std::setw(8)
          << table.text(r, "status") << std::setw(14) << table.number(r, "rel_l2_error")
          << std::setw(14) << table.number(r, "inv_k_max") << table.number(r, "ref_inv_k_max")
          << "\n";
      if (table.text(r, "index") != "mean" && table.text(r, "axis") == "epsilon" &&
          table.text(r, "status") == "ok" && table.number(r, "rel_l2_error") > 0.0) {
        eps.push_back(table.number(r, "value"));
        err.push_back(table.number(r, "rel_l2_error"));
      }
    }
    if (eps.size() >= 2) {
      try {
        out << "convergence order in epsilon: " << convergence_order(eps, err) << "\n";
      } catch (const InvalidArgument&) {
      }
    }
    return out.str();
  }
  if (!fs::exists(dir / "summary.csv")) {
    throw CsvError(dir.string() + ": neither sweep.csv nor summary.csv found");
  }
  const auto summary = read_csv(dir / "summary.csv", summary_schema());
  out << "run " << dir.string() << "\n";
  for (const auto& name : summary_schema().columns) {
    out << "  " << std::left << std::setw(16) << name << summary.text(0, name) << "\n";
  }
  const auto energy = read_csv(dir / "energy.csv", energy_schema());
  std::size_t increases = 0;
  double worst = 0.0;
  for (std::size_t r = 1; r < energy.rows.size(); ++r) {
    const double d = energy.number(r, "E") - energy.number(r - 1, "E");
    if (d > 0.0) {
      ++increases;
      worst = std::max(worst, d);
    }
  }
  if (!energy.rows.empty()) {
    const double e0 = energy.number(0, "E");
    out << "  energy records  " << energy.rows.size() << "\n"
        << "  E first / last  " << e0 << " / " << energy.number(energy.rows.size() - 1, "E")
        << "\n"
        << "  E increases     " << increases << " (largest " << worst << ", relative "
        << (e0 != 0.0 ? worst / std::abs(e0) : nan) << ")\n";
    const double m0 = energy.number(0, "mass");
    const double m1 = energy.number(energy.rows.size() - 1, "mass");
    out << "  mass drift      " << (m0 != 0.0 ? (m1 - m0) / std::abs(m0) : nan) << "\n";
  }
  return out.str();
}

}  // namespace apchemo::cli
