#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

namespace switchkit {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Parses a full-field decimal; throws std::invalid_argument otherwise.
double parse_double(const std::string& text);

/// Plain comma-separated writer with a one-line header. Fields are written
/// verbatim, so they must not contain commas or newlines.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);
  std::size_t columns() const noexcept { return columns_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, std::size_t col) const;
};

/// Reads a file written by CsvWriter. Throws std::runtime_error on I/O
/// failure or ragged rows.
CsvTable read_csv(const std::string& path);

}  // namespace switchkit
