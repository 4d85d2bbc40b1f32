#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace filadyn::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string with_line(int line, const std::string& message) {
  return line > 0 ? "line " + std::to_string(line) + ": " + message : message;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec == std::errc() && ptr == end) return true;
  // 1e7 style counts
  double d = 0.0;
  if (!parse_double(text, d) || d < 0.0 || d > 1.8e19 || d != std::floor(d)) return false;
  out = static_cast<std::uint64_t>(d);
  return true;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(with_line(line, message)), line_(line) {}

double Grid::at(std::uint64_t i) const {
  if (count == 1) return min;
  if (i + 1 == count) return max;
  const double f = static_cast<double>(i) / static_cast<double>(count - 1);
  return min + (max - min) * f;
}

double parse_number(std::string_view text) {
  double v = 0.0;
  if (!parse_double(text, v)) throw ConfigError(0, "not a finite number: '" + std::string(text) + "'");
  return v;
}

const std::vector<std::string_view>& Config::known_keys() {
  static const std::vector<std::string_view> keys = {
      "run.seed",          "run.threads",        "output.format",      "output.path",
      "operator.scheme",   "operator.model",     "geometry.kappa0",    "geometry.tau0",
      "geometry.equipartition",                  "flow.v_s",           "flow.v_n",
      "flow.v_n_meansq",   "plasma.alpha",       "plasma.beta",        "plasma.lambda",
      "plasma.eta",        "sweep.kappa0",       "sweep.tau0",         "sweep.v_s",
      "sweep.alpha",       "sweep.lambda",       "sweep.beta",         "sweep.locus",
      "sweep.row_cap",     "verify.dt",          "verify.t_end",       "verify.draws",
      "verify.order_dt",   "verify.fault",       "abc.A",              "abc.B",
      "abc.C",             "abc.points",         "abc.random_points",  "tube.r",
      "tube.s",            "tube.theta0",        "tube.tau0",          "tube.bracket",
      "tube.B_s",          "tube.B_theta",       "tube.eta",           "frenet.helices",
      "frenet.step",
  };
  return keys;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  const auto& keys = known_keys();
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    if (const auto it = cfg.entries_.find(key); it != cfg.entries_.end()) {
      throw ConfigError(line_no, "duplicate key '" + key + "' (first set on line " +
                                     std::to_string(it->second.line) + ")");
    }
    cfg.entries_.emplace(key, Entry{value, line_no});
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, std::string value) {
  entries_[key] = Entry{std::move(value), 0};
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void Config::reject(const std::string& key, const std::string& message) const {
  const Entry* e = find(key);
  throw ConfigError(e ? e->line : 0, key + ": " + message);
}

std::optional<std::string> Config::text(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<double> Config::number(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  double v = 0.0;
  if (!parse_double(e->value, v)) reject(key, "expected a finite number, got '" + e->value + "'");
  return v;
}

std::optional<std::uint64_t> Config::count(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  std::uint64_t v = 0;
  if (!parse_u64(e->value, v)) reject(key, "expected a nonnegative integer, got '" + e->value + "'");
  return v;
}

std::optional<bool> Config::flag(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  reject(key, "expected true or false, got '" + e->value + "'");
}

std::optional<Grid> Config::grid(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  const std::string& v = e->value;
  Grid g;
  const auto c1 = v.find(':');
  if (c1 == std::string::npos) {
    if (!parse_double(v, g.min)) reject(key, "expected min:max:count or a number, got '" + v + "'");
    g.max = g.min;
    return g;
  }
  const auto c2 = v.find(':', c1 + 1);
  if (c2 == std::string::npos || v.find(':', c2 + 1) != std::string::npos) {
    reject(key, "expected min:max:count, got '" + v + "'");
  }
  const std::string_view sv(v);
  if (!parse_double(sv.substr(0, c1), g.min) || !parse_double(sv.substr(c1 + 1, c2 - c1 - 1), g.max) ||
      !parse_u64(sv.substr(c2 + 1), g.count)) {
    reject(key, "expected min:max:count with finite bounds and an integer count, got '" + v + "'");
  }
  if (g.count < 1) reject(key, "grid count must be at least 1");
  if (g.min > g.max) reject(key, "grid min exceeds max");
  if (g.count == 1 && g.min != g.max) reject(key, "a single-point grid needs min == max");
  return g;
}

double Config::number_or(const std::string& key, double fallback) const {
  return number(key).value_or(fallback);
}

double Config::require_number(const std::string& key, std::string_view needed_by) const {
  if (auto v = number(key)) return *v;
  throw ConfigError(0, std::string(needed_by) + " needs '" + key + "'");
}

}  // namespace filadyn::cli
