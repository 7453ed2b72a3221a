#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/error.hpp"
#include "expsum/format.hpp"
#include "expsum/series.hpp"

namespace expsum {

struct CsvOptions {
  // Required when the header is `year,value`: t = year - year_origin.
  std::optional<double> year_origin;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace detail

/// Parses `t,value` or `year,value` text. The delimiter is ';' when the
/// header contains one, otherwise ','. With ';' a decimal comma is accepted.
inline TimeSeries parse_csv(std::string_view text, const CsvOptions& options = {},
                            std::string name = {}) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    const auto line = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
    ++line_no;
    if (!trim(line).empty()) lines.emplace_back(line_no, line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (lines.empty()) throw Error(ErrorKind::ParseError, "input is empty");

  const auto [header_row, header_line] = lines.front();
  const char delim = header_line.find(';') != std::string_view::npos ? ';' : ',';
  const auto header = detail::split(header_line, delim);
  if (header.size() != 2 || detail::lower(trim(header[1])) != "value") {
    throw Error(ErrorKind::ParseError, "row " + std::to_string(header_row) +
                                           ": header must be `t,value` or `year,value`");
  }
  const auto key = detail::lower(trim(header[0]));
  const bool by_year = key == "year";
  if (!by_year && key != "t") {
    throw Error(ErrorKind::ParseError, "row " + std::to_string(header_row) +
                                           ", column 1: expected `t` or `year`");
  }
  if (by_year && !options.year_origin) {
    throw Error(ErrorKind::ParseError, "`year` column requires a year origin");
  }

  std::vector<DataPoint> points;
  points.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [row, line] = lines[i];
    const auto fields = detail::split(line, delim);
    if (fields.size() != 2) {
      throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + ": expected 2 columns, got " +
                                             std::to_string(fields.size()));
    }
    double values[2];
    for (std::size_t col = 0; col < 2; ++col) {
      std::string field(trim(fields[col]));
      if (delim == ';') std::replace(field.begin(), field.end(), ',', '.');
      const auto v = parse_double(field);
      if (!v) {
        throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + ", column " +
                                               std::to_string(col + 1) + ": not a number: '" +
                                               field + "'");
      }
      values[col] = *v;
    }
    const double t = by_year ? values[0] - *options.year_origin : values[0];
    points.push_back({t, values[1]});
  }
  return validate_series(std::move(points), std::move(name));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

inline TimeSeries ingest_csv(const std::filesystem::path& path, const CsvOptions& options = {}) {
  return parse_csv(read_file(path), options, path.stem().string());
}

/// `t,value` with 17 significant digits, '\n' line endings.
inline std::string series_to_csv(const TimeSeries& series) {
  std::string out = "t,value\n";
  for (const auto& p : series) {
    out += format_double(p.t);
    out += ',';
    out += format_double(p.y);
    out += '\n';
  }
  return out;
}

}  // namespace expsum
