#include "carrisk/csv.hpp"

#include "carrisk/error.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace carrisk::csv {

int Table::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return static_cast<int>(k);
  return -1;
}

std::size_t Table::require_column(const std::string& name, const std::string& file) const {
  int k = column(name);
  if (k < 0) fail(file + ": missing required column '" + name + "'");
  return static_cast<std::size_t>(k);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

Table parse(const std::string& text, const std::string& name) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (lineno == 1) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      fail(name + ":" + std::to_string(lineno) + ": expected " +
           std::to_string(t.header.size()) + " fields, got " + std::to_string(fields.size()));
    t.rows.emplace_back(std::move(fields));
  }
  if (t.header.empty()) fail(name + ": empty file");
  return t;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_real(const std::string& s, const std::string& context) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str() || *end != '\0')
    fail(context + ": not a real number: '" + s + "'");
  return v;
}

long parse_int(const std::string& s, const std::string& context) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (errno != 0 || end == s.c_str() || *end != '\0')
    fail(context + ": not an integer: '" + s + "'");
  return v;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("cannot write file: " + path);
  out << contents;
  if (!out) fail("write failed: " + path);
}

}  // namespace carrisk::csv
