#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <thread>

#include "apchemo/cli/config.hpp"
#include "apchemo/cli/csv.hpp"
#include "apchemo/cli/experiment.hpp"
#include "apchemo/errors.hpp"

namespace fs = std::filesystem;
using namespace apchemo::cli;

namespace {

void print_summary(const RunSummary& s, const fs::path& dir) {
  std::cout << "output        " << dir.string() << "\n"
            << "status        " << s.status << "\n"
            << "steps         " << s.steps_completed << "\n"
            << "t_final       " << format_double(s.t_final) << "\n"
            << "mass          " << format_double(s.mass) << "\n"
            << "rho min/max   " << format_double(s.rho_min) << " / " << format_double(s.rho_max)
            << "\n"
            << "k_max         " << format_double(s.k_max) << "\n"
            << "inv_k_max     " << format_double(s.inv_k_max) << "\n";
  if (!s.error.empty()) std::cout << "error         " << s.error << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apchemo: kinetic and macroscopic volume-exclusion chemotaxis solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(code_version()));

  auto* run = app.add_subcommand("run", "run one configuration");
  std::string run_config;
  std::optional<std::string> run_output;
  bool quiet = false;
  run->add_option("config", run_config, "INI config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", run_output, "output directory");
  run->add_flag("-q,--quiet", quiet, "no progress lines");

  auto* sw = app.add_subcommand("sweep", "run a parameter sweep against macro references");
  std::string sweep_config, axis;
  std::vector<double> values;
  std::optional<std::string> sweep_output;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  sw->add_option("config", sweep_config, "INI config file")->required()->check(CLI::ExistingFile);
  sw->add_option("--axis", axis, "epsilon, A or seed")
      ->required()
      ->check(CLI::IsMember({"epsilon", "A", "seed"}));
  sw->add_option("--values", values, "axis values")->required()->expected(1, -1);
  sw->add_option("-o,--output", sweep_output, "output directory");
  sw->add_option("-j,--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("report", "summarise a run or sweep directory");
  std::string report_dir;
  rep->add_option("dir", report_dir, "run or sweep directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* show = app.add_subcommand("defaults", "print the default config");
  int show_dim = 1;
  show->add_option("--dimension", show_dim, "1 or 2")->check(CLI::IsMember({1, 2}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto config = load_config(run_config);
      std::optional<fs::path> override;
      if (run_output) override = *run_output;
      const auto dir = resolve_output_dir(config, fs::path(run_config).stem().string(), override);
      const auto summary = run_experiment(config, dir, quiet ? nullptr : &std::cerr);
      print_summary(summary, dir);
      return summary.status == "ok" ? 0 : 3;
    }
    if (*sw) {
      const auto config = load_config(sweep_config);
      std::optional<fs::path> override;
      if (sweep_output) override = *sweep_output;
      const auto dir = resolve_output_dir(
          config, fs::path(sweep_config).stem().string() + "-sweep-" + axis, override);
      const auto result = sweep(config, parse_axis(axis), values, dir, jobs);
      std::cout << report(dir);
      if (result.order) std::cout << "fitted order  " << format_double(*result.order) << "\n";
      return 0;
    }
    if (*rep) {
      std::cout << report(report_dir);
      return 0;
    }
    if (*show) {
      std::string text = "[run]\ndimension = " + std::to_string(show_dim) + "\n";
      std::cout << emit_config(parse_config(text));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
