#include "apchemo/cli/initial.hpp"

#include "apchemo/cli/csv.hpp"

namespace apchemo::cli {

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) : inc_((stream << 1u) | 1u) {
  next();
  state_ += seed;
  next();
}

std::uint32_t Pcg32::next() {
  const std::uint64_t old = state_;
  state_ = old * multiplier + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

double Pcg32::uniform_open() {
  const std::uint64_t a = next() >> 5u;
  const std::uint64_t b = next() >> 6u;
  const std::uint64_t m = (a << 26u) | b;
  return (static_cast<double>(m) + 0.5) * 0x1p-53;
}

std::vector<double> uniform_perturbation(std::uint64_t seed, std::size_t n, double amplitude) {
  std::vector<double> u(n, 0.0);
  if (amplitude == 0.0) return u;
  Pcg32 rng(seed);
  for (auto& x : u) x = amplitude * (2.0 * rng.uniform_open() - 1.0);
  return u;
}

namespace {

std::vector<double> initial_density(const RunConfig& config, std::size_t n) {
  if (!config.initial.file.empty()) {
    const auto table = read_csv(config.initial.file, profile_schema());
    if (table.rows.size() != n) {
      throw ConfigError("field 'initial.file': profile has " + std::to_string(table.rows.size()) +
                        " rows, grid has " + std::to_string(n) + " nodes");
    }
    std::vector<double> rho(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (table.count(j, "j") != j) throw ConfigError("field 'initial.file': rows out of order");
      rho[j] = table.number(j, "rho");
    }
    return rho;
  }
  auto rho = uniform_perturbation(config.seed, n, config.initial.amplitude);
  for (auto& r : rho) r += config.initial.mean;
  return rho;
}

}  // namespace

MacroState make_macro_initial(const RunConfig& config, const Grid1D& grid) {
  MacroState s;
  s.rho = DensityField(initial_density(config, grid.nx()));
  s.c = ChemoField(grid.nx(), config.initial.mean);
  return s;
}

KineticState make_kinetic_initial(const RunConfig& config, const Grid1D& grid) {
  KineticState s;
  s.rho = DensityField(initial_density(config, grid.nx()));
  s.c = ChemoField(grid.nx(), config.initial.mean);
  s.g = PerturbationField(grid.nv(), grid.nx());
  return s;
}

MacroState2D make_macro_initial(const RunConfig& config, const Grid2D& grid) {
  MacroState2D s;
  s.rho = DensityField(initial_density(config, grid.nodes()));
  s.c = ChemoField(grid.nodes(), config.initial.mean);
  return s;
}

KineticState2D make_kinetic_initial(const RunConfig& config, const Grid2D& grid) {
  KineticState2D s;
  s.rho = DensityField(initial_density(config, grid.nodes()));
  s.c = ChemoField(grid.nodes(), config.initial.mean);
  s.g1 = PhaseArray(grid.nv(), grid.nodes());
  s.g2 = PhaseArray(grid.nv(), grid.nodes());
  return s;
}

}  // namespace apchemo::cli
