// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal comma-separated reader shared by the pose and metrics modules.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "bgaug/error.hpp"

namespace bgaug::csv {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

/// Calls row(fields, line_number) for every non-empty line. A first line
/// whose `numeric_column` does not parse as a number is treated as a header.
template <class RowFn>
void for_each_row(const std::filesystem::path& path, std::size_t numeric_column, RowFn&& row) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view);
    if (first) {
      first = false;
      double probe = 0.0;
      if (fields.size() <= numeric_column || !parse_double(fields[numeric_column], probe)) continue;
    }
    row(fields, number);
  }
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path.string());
}

inline double field_as_double(const std::vector<std::string_view>& fields, std::size_t i,
                              const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  if (i >= fields.size() || !parse_double(fields[i], v)) {
    throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line) + ": expected a number in column " +
                                       std::to_string(i + 1));
  }
  return v;
}

}  // namespace bgaug::csv
