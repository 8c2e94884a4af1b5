// SPDX-License-Identifier: Apache-2.0
#include "bgaug/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "csv.hpp"

namespace bgaug {
namespace fs = std::filesystem;

namespace {

Range read_range(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorKind::Config, "config key '" + key + "' must be a [lo, hi] pair");
  }
  return Range{v[0].get<double>(), v[1].get<double>()};
}

[[noreturn]] void toml_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Config, "config line " + std::to_string(line) + ": " + what);
}

nlohmann::json parse_toml_value(std::string_view text, std::size_t line) {
  text = csv::trim(text);
  if (text.empty()) toml_error(line, "missing value");
  if (text == "true") return true;
  if (text == "false") return false;
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') toml_error(line, "unterminated string");
    return std::string(text.substr(1, text.size() - 2));
  }
  if (text.front() == '[') {
    if (text.back() != ']') toml_error(line, "unterminated array");
    nlohmann::json arr = nlohmann::json::array();
    const std::string_view body = csv::trim(text.substr(1, text.size() - 2));
    if (body.empty()) return arr;
    for (std::string_view item : csv::split(body)) {
      if (item.empty()) continue;  // trailing comma
      arr.push_back(parse_toml_value(item, line));
    }
    return arr;
  }
  std::string digits;
  for (char c : text) {
    if (c != '_') digits.push_back(c);
  }
  double v = 0.0;
  if (!csv::parse_double(digits, v)) toml_error(line, "unsupported value '" + std::string(text) + "'");
  if (digits.find_first_of(".eE") == std::string::npos) return static_cast<long long>(v);
  return v;
}

}  // namespace

AugRanges aug_ranges_from_json(const nlohmann::json& doc, AugRanges r) {
  if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be an object");
  const nlohmann::json& j = doc.contains("augment") ? doc.at("augment") : doc;
  if (!j.is_object()) throw Error(ErrorKind::Config, "config 'augment' must be an object");

  for (const auto& [key, value] : j.items()) {
    if (key == "exposure_gain") r.exposure_gain = read_range(value, key);
    else if (key == "gamma") r.gamma = read_range(value, key);
    else if (key == "dr_lo") r.dr_lo = read_range(value, key);
    else if (key == "dr_hi") r.dr_hi = read_range(value, key);
    else if (key == "blur_sigma") r.blur_sigma = read_range(value, key);
    else if (key == "noise_sigma") r.noise_sigma = read_range(value, key);
    else if (key == "vignette_f") r.vignette_f = read_range(value, key);
    else if (key == "vignette_strength") r.vignette_strength = read_range(value, key);
    else if (key == "blur_probability") {
      if (!value.is_number()) throw Error(ErrorKind::Config, "blur_probability must be a number");
      r.blur_probability = value.get<double>();
    } else if (key == "row_offset") {
      const Range ro = read_range(value, key);
      if (ro.lo != std::floor(ro.lo) || ro.hi != std::floor(ro.hi)) {
        throw Error(ErrorKind::Config, "row_offset bounds must be integers");
      }
      r.row_offset_lo = static_cast<int>(ro.lo);
      r.row_offset_hi = static_cast<int>(ro.hi);
    } else {
      throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
    }
  }
  r.validate();
  return r;
}

nlohmann::json parse_toml_subset(std::string_view text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    // Strip comments outside strings.
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        line = line.substr(0, i);
        break;
      }
    }
    line = csv::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') toml_error(line_no, "malformed table header");
      const std::string name(csv::trim(line.substr(1, line.size() - 2)));
      if (name.empty()) toml_error(line_no, "empty table name");
      table = &root[name];
      if (table->is_null()) *table = nlohmann::json::object();
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) toml_error(line_no, "expected key = value");
    const std::string key(csv::trim(line.substr(0, eq)));
    if (key.empty()) toml_error(line_no, "empty key");
    (*table)[key] = parse_toml_value(line.substr(eq + 1), line_no);
  }
  return root;
}

AugRanges load_aug_ranges(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (path.extension() == ".toml") return aug_ranges_from_json(parse_toml_subset(text));
  try {
    return aug_ranges_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

}  // namespace bgaug
