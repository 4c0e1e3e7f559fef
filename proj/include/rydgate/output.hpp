#pragma once

// Deterministic serialization: numbers carry 12 significant digits, CSV
// follows RFC 4180 quoting, JSON objects keep insertion order.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rydgate {

using Json = nlohmann::ordered_json;

/// "%.12g" formatting.
std::string format_number(double v);

/// v rounded to 12 significant digits, so JSON dumps are as stable as CSV.
double round12(double v);

struct Table {
  using Cell = std::variant<double, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string csv_escape(const std::string& field);
void write_csv(std::ostream& out, const Table& table);
/// Array of row objects keyed by column name.
Json table_to_json(const Table& table);
/// Two-column (key, value) table of a JSON object, nested keys joined by '.'.
Table json_to_table(const Json& object);
void write_json(std::ostream& out, const Json& value);

} // namespace rydgate
