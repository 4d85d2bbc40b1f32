#include "report.hpp"

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>

#include "filadyn/filadyn.h"

namespace filadyn::cli {

namespace {

using json = nlohmann::ordered_json;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  };
  return std::visit(Visitor{}, c);
}

json json_cell(const Cell& c) {
  struct Visitor {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(double v) const { return std::isfinite(v) ? json(v) : json(format_number(v)); }
    json operator()(std::int64_t v) const { return v; }
    json operator()(bool v) const { return v; }
    json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

void csv_table(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

json json_table(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_csv(std::ostream& out, const Report& report) {
  for (std::size_t i = 0; i < report.tables.size(); ++i) {
    if (i > 0) out << "\n# " << report.tables[i].name << '\n';
    csv_table(out, report.tables[i]);
  }
  for (const auto& [key, value] : report.footer) out << "# " << key << '=' << value << '\n';
}

void write_json(std::ostream& out, const Report& report) {
  json doc = json::object();
  json config = json::object();
  for (const auto& [key, value] : report.config_echo) config[key] = value;
  doc["meta"] = {{"version", fd_version()},
                 {"command", report.command},
                 {"seed", report.seed},
                 {"config", std::move(config)}};
  for (std::size_t i = 0; i < report.tables.size(); ++i) {
    doc[i == 0 ? std::string("rows") : report.tables[i].name] = json_table(report.tables[i]);
  }
  if (!report.footer.empty()) {
    json footer = json::object();
    for (const auto& [key, value] : report.footer) footer[key] = value;
    doc["footer"] = std::move(footer);
  }
  out << doc.dump(2) << '\n';
}

void write_report(std::ostream& out, const Report& report, Format format) {
  if (format == Format::Csv) {
    write_csv(out, report);
  } else {
    write_json(out, report);
  }
}

}  // namespace filadyn::cli
