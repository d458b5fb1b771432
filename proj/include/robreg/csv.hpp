#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robreg/errors.hpp"

namespace robreg {

// Strict numeric CSV: comma separators, mandatory header row, every data
// cell a number with '.' decimal point, no quoting. Row numbers in error
// messages are 1-based over data rows (the header is row 0).
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // index of a named column; throws ValidationError when absent
  std::size_t column_index(const std::string& name) const;
};

CsvTable read_numeric_csv(std::istream& in, const std::string& origin = "csv");
CsvTable read_numeric_csv_file(const std::string& path);

// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_double(double v);

void write_numeric_csv(std::ostream& out, const CsvTable& table);
void write_numeric_csv_file(const std::string& path, const CsvTable& table);

}  // namespace robreg
