// table.hpp — result tables with CSV and JSON serialization.
#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zeno/spectra.hpp"

namespace zeno {

// Empty cells serialize as nothing (CSV) or null (JSON).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> meta;  // '# key: value' CSV header lines
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
  }

  std::vector<Cell>& add_row() {
    rows.emplace_back();
    rows.back().reserve(columns.size());
    return rows.back();
  }

  void write_csv(std::ostream& os, int precision) const;
  void write_json(std::ostream& os, int precision) const;
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline void write_cell_csv(std::ostream& os, const Cell& c, int precision) {
  if (std::holds_alternative<std::monostate>(c)) return;
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d))
      os << "nan";
    else if (std::isinf(*d))
      os << (*d > 0 ? "inf" : "-inf");
    else
      os << format_significant(*d, precision);
    return;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    os << *i;
    return;
  }
  os << csv_escape(std::get<std::string>(c));
}

inline void write_cell_json(std::ostream& os, const Cell& c, int precision) {
  if (std::holds_alternative<std::monostate>(c)) {
    os << "null";
    return;
  }
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d))
      os << "null";  // JSON has no inf/nan
    else
      os << format_significant(*d, precision);
    return;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    os << *i;
    return;
  }
  os << json_escape(std::get<std::string>(c));
}

}  // namespace detail

inline void ResultTable::write_csv(std::ostream& os, int precision) const {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << detail::csv_escape(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ',';
      if (i < row.size()) detail::write_cell_csv(os, row[i], precision);
    }
    os << '\n';
  }
}

inline void ResultTable::write_json(std::ostream& os, int precision) const {
  os << "[\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ", ";
      os << detail::json_escape(columns[i]) << ": ";
      if (i < rows[r].size())
        detail::write_cell_json(os, rows[r][i], precision);
      else
        os << "null";
    }
    os << (r + 1 < rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

}  // namespace zeno
