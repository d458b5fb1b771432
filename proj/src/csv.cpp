#include "robreg/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace robreg {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return j;
  }
  throw ValidationError("column '" + name + "' not found in CSV header");
}

CsvTable read_numeric_csv(std::istream& in, const std::string& origin) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(origin + ": empty input, expected a header row");
  }
  for (const auto& name : split_line(line)) {
    const std::string t = trim(name);
    if (t.empty()) {
      throw ValidationError(origin + ": empty column name in header");
    }
    for (const auto& existing : table.columns) {
      if (existing == t) {
        throw ValidationError(origin + ": duplicate column '" + t + "'");
      }
    }
    table.columns.push_back(t);
  }

  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) {
      throw ValidationError(origin + ": blank line at row " +
                            std::to_string(row_no));
    }
    const auto cells = split_line(line);
    if (cells.size() != table.columns.size()) {
      throw ValidationError(origin + ": row " + std::to_string(row_no) +
                            " has " + std::to_string(cells.size()) +
                            " fields, expected " +
                            std::to_string(table.columns.size()));
    }
    std::vector<double> parsed(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = trim(cells[j]);
      double v = 0.0;
      const auto* first = cell.data();
      const auto* last = cell.data() + cell.size();
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{} || res.ptr != last || cell.empty()) {
        throw ValidationError(origin + ": row " + std::to_string(row_no) +
                              ", column '" + table.columns[j] +
                              "': cannot parse '" + cell + "' as a number");
      }
      parsed[j] = v;
    }
    table.rows.push_back(std::move(parsed));
  }
  return table;
}

CsvTable read_numeric_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_numeric_csv(in, path);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_numeric_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out << ',';
    out << table.columns[j];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

void write_numeric_csv_file(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_numeric_csv(out, table);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace robreg
