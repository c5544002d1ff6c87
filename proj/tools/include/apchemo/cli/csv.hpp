#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apchemo::cli {

/// Every CSV starts with "# apchemo-csv v<version> <kind>" followed by a header row.
inline constexpr int csv_schema_version = 1;

struct CsvSchema {
  std::string kind;
  std::vector<std::string> columns;
};

/// Fixed schemas of the files written by run_experiment and sweep.
const CsvSchema& snapshot1d_schema();
const CsvSchema& snapshot2d_schema();
const CsvSchema& gslice_schema();
const CsvSchema& energy_schema();
const CsvSchema& summary_schema();
const CsvSchema& sweep_schema();
const CsvSchema& profile_schema();

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const CsvSchema& schema);

  CsvWriter& operator<<(double x);
  CsvWriter& operator<<(std::size_t x);
  CsvWriter& operator<<(std::string_view text);
  void end_row();
  void flush() { out_.flush(); }

 private:
  void separator();

  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t n_columns_;
  std::size_t column_ = 0;
};

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed table; cells are kept as text.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::size_t count(std::size_t row, std::string_view name) const;
  const std::string& text(std::size_t row, std::string_view name) const;
};

/// Reads a file and checks the magic line, version, kind and header against `schema`.
CsvTable read_csv(const std::filesystem::path& path, const CsvSchema& schema);

}  // namespace apchemo::cli
