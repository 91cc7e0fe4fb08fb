#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tipsy {

enum class Format { Csv, Json };

// One cell of a record table. Null marks a method that produced no value at
// that index.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

// A record stream: metadata that determines how it was produced, and rows of
// aligned columns.
struct Table {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// JSON: {"meta": {...}, "data": [{column: value, ...}, ...]} with doubles at
// 17 significant digits. CSV: "# key=value" metadata lines, a header row and
// one line per row, doubles at 12 significant digits.
void write_table(const Table& table, Format format, std::ostream& out);

std::string format_double(double x, int significant_digits);

}  // namespace tipsy
