#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace filadyn::cli {

/// Empty cells stay blank in CSV and become null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Output of one command. The first table is the "rows" table; further
/// tables follow it in CSV and become sibling arrays in JSON.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::uint64_t seed = 0;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::int64_t>> footer;
};

enum class Format { Csv, Json };

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

void write_csv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);
void write_report(std::ostream& out, const Report& report, Format format);

}  // namespace filadyn::cli
