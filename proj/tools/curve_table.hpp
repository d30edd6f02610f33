#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

// Columnar figure data. Divergent points are stored as signed infinities;
// the CSV writer spells them "inf"/"-inf" and the JSON writer emits null
// plus a "divergent" index map. Metadata rows are ordered key=value pairs
// carried as "# key=value" comment lines in CSV.
struct CurveTable {
  std::string name;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[column][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
};

inline std::string curve_format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string curve_table_to_csv(const CurveTable& t) {
  std::string out = "# name=" + t.name + "\n";
  for (const auto& [k, v] : t.metadata) out += "# " + k + "=" + v + "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out += ',';
      out += curve_format_number(t.data[c][r]);
    }
    out += '\n';
  }
  return out;
}

inline std::string curve_table_to_json(const CurveTable& t) {
  nlohmann::json j;
  j["name"] = t.name;
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  j["metadata"] = meta;
  nlohmann::json cols = nlohmann::json::object();
  nlohmann::json divergent = nlohmann::json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    nlohmann::json arr = nlohmann::json::array();
    nlohmann::json marks = nlohmann::json::array();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double v = t.data[c][r];
      if (std::isinf(v)) {
        arr.push_back(nullptr);
        marks.push_back({{"index", r}, {"sign", v > 0 ? 1 : -1}});
      } else {
        arr.push_back(v);
      }
    }
    cols[t.columns[c]] = arr;
    if (!marks.empty()) divergent[t.columns[c]] = marks;
  }
  j["columns"] = cols;
  j["divergent"] = divergent;
  return j.dump();
}

namespace curve_detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

inline double parse_cell(const std::string& cell) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size())
    throw std::runtime_error("malformed numeric cell: " + cell);
  return v;  // strtod handles "inf" and "-inf"
}

}  // namespace curve_detail

inline CurveTable curve_table_from_csv(const std::string& text) {
  CurveTable t;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string line =
        text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const std::size_t eq = line.find('=', 2);
      if (eq == std::string::npos) throw std::runtime_error("malformed metadata line: " + line);
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "name" && t.name.empty() && t.metadata.empty())
        t.name = value;
      else
        t.metadata.emplace_back(key, value);
      continue;
    }
    const auto cells = curve_detail::split(line, ',');
    if (!header_seen) {
      t.columns = cells;
      t.data.assign(cells.size(), {});
      header_seen = true;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw std::runtime_error("row width does not match the header");
    for (std::size_t c = 0; c < cells.size(); ++c)
      t.data[c].push_back(curve_detail::parse_cell(cells[c]));
  }
  if (!header_seen) throw std::runtime_error("no header row present");
  return t;
}
