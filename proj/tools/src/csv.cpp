#include "apchemo/cli/csv.hpp"

#include <charconv>
#include <sstream>

#include "apchemo/cli/config.hpp"

namespace apchemo::cli {

const CsvSchema& snapshot1d_schema() {
  static const CsvSchema s{"snapshot1d", {"step", "t", "j", "x", "rho", "c"}};
  return s;
}
const CsvSchema& snapshot2d_schema() {
  static const CsvSchema s{"snapshot2d", {"step", "t", "j1", "j2", "x1", "x2", "rho", "c"}};
  return s;
}
const CsvSchema& gslice_schema() {
  static const CsvSchema s{"gslice", {"step", "t", "j", "x_half", "k", "v", "g"}};
  return s;
}
const CsvSchema& energy_schema() {
  static const CsvSchema s{"energy",
                           {"step", "t", "E", "phi_integral", "interaction_integral", "mass"}};
  return s;
}
const CsvSchema& summary_schema() {
  static const CsvSchema s{"summary",
                           {"status", "steps_completed", "t_final", "mass", "rho_min", "rho_max",
                            "k_max", "inv_k_max", "pattern_mode", "degenerate"}};
  return s;
}
const CsvSchema& sweep_schema() {
  static const CsvSchema s{"sweep",
                           {"index", "axis", "value", "status", "rel_l2_error", "inv_k_max",
                            "ref_inv_k_max", "run_dir"}};
  return s;
}
const CsvSchema& profile_schema() {
  static const CsvSchema s{"profile", {"j", "rho"}};
  return s;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const CsvSchema& schema)
    : out_(path), path_(path), n_columns_(schema.columns.size()) {
  if (!out_) throw CsvError("cannot write '" + path.string() + "'");
  out_ << "# apchemo-csv v" << csv_schema_version << ' ' << schema.kind << '\n';
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    out_ << (i ? "," : "") << schema.columns[i];
  }
  out_ << '\n';
}

void CsvWriter::separator() {
  if (column_ == n_columns_) throw CsvError(path_.string() + ": too many cells in row");
  if (column_++) out_ << ',';
}

CsvWriter& CsvWriter::operator<<(double x) {
  separator();
  out_ << format_double(x);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t x) {
  separator();
  out_ << x;
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view text) {
  separator();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  if (column_ != n_columns_) throw CsvError(path_.string() + ": short row");
  out_ << '\n';
  column_ = 0;
  if (!out_) throw CsvError("write failed on '" + path_.string() + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw CsvError("no column '" + std::string(name) + "'");
}

const std::string& CsvTable::text(std::size_t row, std::string_view name) const {
  return rows.at(row).at(column(name));
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const auto& cell = text(row, name);
  double value = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw CsvError("row " + std::to_string(row) + " column '" + std::string(name) +
                   "': not a number: '" + cell + "'");
  }
  return value;
}

std::size_t CsvTable::count(std::size_t row, std::string_view name) const {
  const auto& cell = text(row, name);
  std::size_t value = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw CsvError("row " + std::to_string(row) + " column '" + std::string(name) +
                   "': not an integer: '" + cell + "'");
  }
  return value;
}

CsvTable read_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path.string() + "'");
  const std::string where = path.string() + ": ";
  std::string line;
  if (!std::getline(in, line)) throw CsvError(where + "empty file");
  std::istringstream magic(line);
  std::string hash, tag, version, kind;
  magic >> hash >> tag >> version >> kind;
  if (hash != "#" || tag != "apchemo-csv") throw CsvError(where + "missing apchemo-csv header");
  if (version != "v" + std::to_string(csv_schema_version)) {
    throw CsvError(where + "unsupported schema version '" + version + "'");
  }
  if (kind != schema.kind) {
    throw CsvError(where + "expected kind '" + schema.kind + "', found '" + kind + "'");
  }
  CsvTable table;
  if (!std::getline(in, line)) throw CsvError(where + "missing column header");
  table.columns = split(line);
  if (table.columns != schema.columns) throw CsvError(where + "column header does not match schema");
  std::size_t number = 2;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      throw CsvError(where + "line " + std::to_string(number) + " has " +
                     std::to_string(cells.size()) + " cells, expected " +
                     std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace apchemo::cli
