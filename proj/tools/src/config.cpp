#include "apchemo/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "apchemo/errors.hpp"
#include "apchemo/trajectory.hpp"

namespace apchemo::cli {

namespace pt = boost::property_tree;

const char* to_string(SolverKind s) noexcept {
  switch (s) {
    case SolverKind::kinetic: return "kinetic";
    case SolverKind::macro_semi_implicit: return "macro_semi_implicit";
    case SolverKind::macro_implicit_d: return "macro_implicit_d";
  }
  return "?";
}

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "config line " + std::to_string(line) + ": " + what
                              : "config: " + what),
      line_(line) {}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

template <class T>
T parse_number(const std::string& field, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text[0] == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last || first == last) {
    throw ConfigError("field '" + field + "': cannot parse '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("field '" + field + "': expected true or false, got '" + text + "'");
}

SolverKind parse_solver(const std::string& text) {
  for (auto s : {SolverKind::kinetic, SolverKind::macro_semi_implicit,
                 SolverKind::macro_implicit_d}) {
    if (text == to_string(s)) return s;
  }
  throw ConfigError("field 'run.solver': unknown solver '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& field, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  auto real = [](double RunConfig::*member) -> Setter {
    return [member](RunConfig& c, const std::string& f, const std::string& v) {
      c.*member = parse_number<double>(f, v);
    };
  };
  auto grid = [](double GridSpec::*member) -> Setter {
    return [member](RunConfig& c, const std::string& f, const std::string& v) {
      c.grid.*member = parse_number<double>(f, v);
    };
  };
  auto model = [](double ModelParams::*member) -> Setter {
    return [member](RunConfig& c, const std::string& f, const std::string& v) {
      c.model.*member = parse_number<double>(f, v);
    };
  };
  static const std::map<std::string, Setter> table = {
      {"run.dimension",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.dimension = parse_number<int>(f, v);
       }},
      {"run.solver", [](RunConfig& c, const std::string&,
                        const std::string& v) { c.solver = parse_solver(v); }},
      {"run.dt", real(&RunConfig::dt)},
      {"run.t_end", real(&RunConfig::t_end)},
      {"run.snapshot_stride",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.snapshot_stride = parse_number<std::size_t>(f, v);
       }},
      {"run.seed",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.seed = parse_number<std::uint64_t>(f, v);
       }},
      {"run.output_dir",
       [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
      {"run.large",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.large = parse_bool(f, v);
       }},
      {"run.write_g",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.write_g = parse_bool(f, v);
       }},
      {"grid.x_min", grid(&GridSpec::x_min)},
      {"grid.x_max", grid(&GridSpec::x_max)},
      {"grid.dx", grid(&GridSpec::dx)},
      {"grid.v_max", grid(&GridSpec::v_max)},
      {"grid.dv", grid(&GridSpec::dv)},
      {"model.gamma", model(&ModelParams::gamma)},
      {"model.rho_bar", model(&ModelParams::rho_bar)},
      {"model.rho_max", model(&ModelParams::rho_max)},
      {"model.r0", model(&ModelParams::r0)},
      {"model.A", model(&ModelParams::A)},
      {"model.epsilon", model(&ModelParams::epsilon)},
      {"initial.mean",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.initial.mean = parse_number<double>(f, v);
       }},
      {"initial.amplitude",
       [](RunConfig& c, const std::string& f, const std::string& v) {
         c.initial.amplitude = parse_number<double>(f, v);
       }},
      {"initial.file",
       [](RunConfig& c, const std::string&, const std::string& v) { c.initial.file = v; }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.message(), e.line());
  }
  RunConfig config;
  if (const auto dim = tree.get_optional<std::string>("run.dimension")) {
    if (parse_number<int>("run.dimension", *dim) == 2) config.grid = GridSpec::desk_2d();
  }
  const auto& table = setters();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' must appear inside a section");
    }
    for (const auto& [key, value] : body) {
      const std::string field = section + "." + key;
      const auto it = table.find(field);
      if (it == table.end()) throw ConfigError("unknown field '" + field + "'");
      it->second(config, field, value.data());
    }
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream out;
  const auto& f = format_double;
  out << "[run]\n"
      << "dimension = " << c.dimension << "\n"
      << "solver = " << to_string(c.solver) << "\n"
      << "dt = " << f(c.dt) << "\n"
      << "t_end = " << f(c.t_end) << "\n"
      << "snapshot_stride = " << c.snapshot_stride << "\n"
      << "seed = " << c.seed << "\n"
      << "output_dir = " << c.output_dir << "\n"
      << "large = " << (c.large ? "true" : "false") << "\n"
      << "write_g = " << (c.write_g ? "true" : "false") << "\n"
      << "\n[grid]\n"
      << "x_min = " << f(c.grid.x_min) << "\n"
      << "x_max = " << f(c.grid.x_max) << "\n"
      << "dx = " << f(c.grid.dx) << "\n"
      << "v_max = " << f(c.grid.v_max) << "\n"
      << "dv = " << f(c.grid.dv) << "\n"
      << "\n[model]\n"
      << "gamma = " << f(c.model.gamma) << "\n"
      << "rho_bar = " << f(c.model.rho_bar) << "\n"
      << "rho_max = " << f(c.model.rho_max) << "\n"
      << "r0 = " << f(c.model.r0) << "\n"
      << "A = " << f(c.model.A) << "\n"
      << "epsilon = " << f(c.model.epsilon) << "\n"
      << "\n[initial]\n"
      << "mean = " << f(c.initial.mean) << "\n"
      << "amplitude = " << f(c.initial.amplitude) << "\n"
      << "file = " << c.initial.file << "\n";
  return out.str();
}

void validate(const RunConfig& c) {
  if (c.dimension != 1 && c.dimension != 2) throw ConfigError("field 'run.dimension': must be 1 or 2");
  if (!(c.dt > 0.0)) throw ConfigError("field 'run.dt': must be > 0");
  if (!(c.t_end >= 0.0)) throw ConfigError("field 'run.t_end': must be >= 0");
  if (c.snapshot_stride < 1) throw ConfigError("field 'run.snapshot_stride': must be >= 1");
  if (!(c.initial.amplitude >= 0.0)) {
    throw ConfigError("field 'initial.amplitude': must be >= 0");
  }
  if (!std::isfinite(c.initial.mean)) throw ConfigError("field 'initial.mean': must be finite");
  if (c.dimension == 2 && c.solver == SolverKind::macro_implicit_d) {
    throw ConfigError("field 'run.solver': macro_implicit_d is available in 1D only");
  }
  if (c.write_g && (c.dimension != 1 || c.solver != SolverKind::kinetic)) {
    throw ConfigError("field 'run.write_g': only 1D kinetic runs carry g");
  }
  try {
    apchemo::validate(c.model);
  } catch (const Error& e) {
    throw ConfigError(std::string("section [model]: ") + e.what());
  }
  try {
    step_count(RunOptions{c.dt, c.t_end, c.snapshot_stride});
  } catch (const Error& e) {
    throw ConfigError(std::string("field 'run.t_end': ") + e.what());
  }
  try {
    make_grid_1d(c);
  } catch (const Error& e) {
    throw ConfigError(std::string("section [grid]: ") + e.what());
  }
}

Grid1D make_grid_1d(const RunConfig& c) {
  return Grid1D{SpatialAxis::from_spacing(c.grid.x_min, c.grid.x_max, c.grid.dx),
                VelocityAxis::symmetric(c.grid.v_max, c.grid.dv)};
}

Grid2D make_grid_2d(const RunConfig& c) {
  const auto g = make_grid_1d(c);
  return Grid2D{g.x, g.x, g.v, g.v};
}

}  // namespace apchemo::cli
