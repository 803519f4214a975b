#pragma once

// CSV series files: header `timestamp,dim_1,...,dim_D`, one row per point,
// values written with 12 significant digits.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "mtcsc/core.hpp"

namespace mtcsc::io {

/// Parse failure. `row` is the 1-based line number, `column` 1-based field.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t row, std::size_t column, const std::string& what,
             const std::string& source = {})
      : std::runtime_error((source.empty() ? std::string() : source + ": ") + "row " +
                           std::to_string(row) +
                           (column ? ", column " + std::to_string(column) : std::string()) + ": " +
                           what),
        row_(row),
        column_(column),
        reason_(what) {}

  const std::string& reason() const noexcept { return reason_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
  std::string reason_;
};

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view field, std::size_t row, std::size_t column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(row, column, "not a number: '" + std::string(field) + "'");
  if (!std::isfinite(v)) throw ParseError(row, column, "non-finite value");
  return v;
}

}  // namespace detail

inline TimeSeries read_series(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  std::size_t columns = 0;
  while (columns == 0) {
    if (!std::getline(in, line)) throw ParseError(row + 1, 0, "missing header row");
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto header = detail::split(line);
    if (detail::trim(header.front()) != "timestamp")
      throw ParseError(row, 1, "header must start with 'timestamp'");
    if (header.size() < 2) throw ParseError(row, 0, "header needs at least one value column");
    columns = header.size();
  }

  TimeSeries ts;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line);
    if (fields.size() != columns)
      throw ParseError(row, 0,
                       "expected " + std::to_string(columns) + " fields, got " +
                           std::to_string(fields.size()));
    DataPoint p{detail::parse_double(fields[0], row, 1), std::vector<double>(columns - 1)};
    for (std::size_t c = 1; c < columns; ++c)
      p.values[c - 1] = detail::parse_double(fields[c], row, c + 1);
    if (!ts.empty() && !(p.timestamp > ts.points.back().timestamp))
      throw ParseError(row, 1, "timestamp not increasing");
    ts.push_back(std::move(p));
  }
  return ts;
}

inline TimeSeries read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return read_series(in);
  } catch (const ParseError& e) {
    throw ParseError(e.row(), e.column(), e.reason(), path);
  }
}

inline void write_series(std::ostream& out, const TimeSeries& ts) {
  out << "timestamp";
  for (std::size_t l = 1; l <= ts.dimension(); ++l) out << ",dim_" << l;
  out << '\n';
  for (const auto& p : ts) {
    out << format_number(p.timestamp);
    for (double v : p.values) out << ',' << format_number(v);
    out << '\n';
  }
}

inline void write_series(const std::string& path, const TimeSeries& ts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_series(out, ts);
}

}  // namespace mtcsc::io
