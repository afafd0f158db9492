#include "casimir/records.hpp"

#include "casimir/errors.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace casimir::cli {

namespace {

std::string csv_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + "\"";
    }
  };
  return std::visit(Visitor{}, cell);
}

std::string json_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(double v) const { return std::isfinite(v) ? format_number(v) : "null"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("table row has the wrong number of cells");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void write_csv(std::ostream& out, const Table& table, const std::optional<std::string>& stamp) {
  if (stamp) out << "# generated " << *stamp << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const Table& table, const std::optional<std::string>& stamp) {
  out << "{\n";
  if (stamp) out << "  \"generated\": " << nlohmann::json(*stamp).dump() << ",\n";
  out << "  \"records\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n    {" : "\n    {");
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? ", " : "") << nlohmann::json(table.columns[i]).dump() << ": " << json_field(table.rows[r][i]);
    }
    out << "}";
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace casimir::cli
