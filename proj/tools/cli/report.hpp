#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace dioph::cli {

using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

// A header block plus either a table or a nested JSON body.
struct Report {
  std::string command;
  std::string quantity;  // what the numbers are, e.g. "selberg_integral"
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json body;  // used instead of rows when not null

  void add_row(std::vector<Cell> row);
};

// Shortest round-trip decimal, independent of locale.
std::string format_double(double v);

nlohmann::ordered_json to_json(const Report& r);
// Header as "# key: value" lines, then the table; a nested body is
// flattened to key,value rows.
void write_csv(std::ostream& out, const Report& r);
void write(std::ostream& out, const Report& r, Format f);

}  // namespace dioph::cli
