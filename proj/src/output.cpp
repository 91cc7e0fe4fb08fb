#include "tipsy/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace tipsy {

namespace {

// Raw JSON text for a double; nlohmann's own float output is shortest
// round-trip, not fixed precision.
std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  return format_double(x, 17);
}

std::string json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "null";
        } else if constexpr (std::is_same_v<V, double>) {
          return json_number(v);
        } else {
          return nlohmann::json(v).dump();
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<V, double>) {
          return format_double(v, 12);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else {
          return csv_escape(v);
        }
      },
      c);
}

// Metadata values in CSV comments: strings bare, everything else as JSON.
std::string meta_value(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>(), 17);
  return v.dump();
}

}  // namespace

std::string format_double(double x, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, x);
  return buf;
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    for (const auto& [key, value] : table.meta.items()) out << "# " << key << "=" << meta_value(value) << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
    return;
  }

  // Floats inside the metadata are written by hand as well so that theta and
  // friends keep 17 digits.
  std::string meta = "{";
  bool first = true;
  for (const auto& [key, value] : table.meta.items()) {
    meta += first ? "" : ",";
    first = false;
    meta += nlohmann::json(key).dump() + ":";
    meta += value.is_number_float() ? json_number(value.get<double>()) : value.dump();
  }
  meta += "}";

  out << "{\"meta\":" << meta << ",\"data\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? "," : "") << "\n{";
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << nlohmann::json(table.columns[i]).dump() << ":" << json_cell(row[i]);
    }
    out << "}";
  }
  out << "\n]}\n";
}

}  // namespace tipsy
