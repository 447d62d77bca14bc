#pragma once

// Minimal CSV support for the fixed schemas used by this project.
// No quoting or embedded separators: tract ids, years, and numbers only.

#include <string>
#include <vector>

namespace carrisk::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name, -1 if absent.
  int column(const std::string& name) const;
  // Column index by name, error if absent (reports the file name).
  std::size_t require_column(const std::string& name, const std::string& file) const;
};

// Reads a whole CSV file; first line is the header. Errors mention
// file name and 1-based line number of the offending row.
Table read_file(const std::string& path);
Table parse(const std::string& text, const std::string& name);

std::vector<std::string> split_line(const std::string& line);

// Real values are serialized with 17 significant digits so that
// export -> import round-trips bit-exactly.
std::string format_real(double x);

double parse_real(const std::string& s, const std::string& context);
long parse_int(const std::string& s, const std::string& context);

void write_file(const std::string& path, const std::string& contents);

}  // namespace carrisk::csv
