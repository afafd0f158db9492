#pragma once

// Tabular output shared by every command: CSV with a fixed header row, or a
// JSON object holding a list of records with the same field names. Numbers
// are written with 17 significant digits.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace casimir::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// %.17g; non-finite values become an empty CSV field or JSON null.
std::string format_number(double v);

/// UTC time stamp for the optional header line.
std::string timestamp_now();

/// "# generated <stamp>" first when stamp is set.
void write_csv(std::ostream& out, const Table& table, const std::optional<std::string>& stamp);

/// {"generated": ..., "records": [{...}, ...]}; one record per line.
void write_json(std::ostream& out, const Table& table, const std::optional<std::string>& stamp);

}  // namespace casimir::cli
