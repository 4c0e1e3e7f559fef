#include "rydgate/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "rydgate/error.hpp"

namespace rydgate {

std::string format_number(double v) {
  if (v == 0.0) return "0"; // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string cell_text(const Table::Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

void flatten(const Json& value, const std::string& prefix, Table& table) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, table);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i)
      flatten(value[i], prefix + "." + std::to_string(i), table);
  } else if (value.is_number()) {
    table.add_row({prefix, value.get<double>()});
  } else if (value.is_string()) {
    table.add_row({prefix, value.get<std::string>()});
  } else {
    table.add_row({prefix, value.dump()});
  }
}

} // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << csv_escape(table.columns[c]);
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(cell_text(row[c]));
    out << "\n";
  }
}

Json table_to_json(const Table& table) {
  Json arr = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* d = std::get_if<double>(&row[c])) obj[table.columns[c]] = round12(*d);
      else obj[table.columns[c]] = std::get<std::string>(row[c]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

Table json_to_table(const Json& object) {
  Table table;
  table.columns = {"key", "value"};
  flatten(object, "", table);
  return table;
}

void write_json(std::ostream& out, const Json& value) { out << value.dump(2) << "\n"; }

} // namespace rydgate
