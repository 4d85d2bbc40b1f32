#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace filadyn::cli {

/// Bad configuration: unknown or duplicate key, malformed value, missing
/// parameter. `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// min:max:count, evenly spaced and inclusive of both ends.
struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::uint64_t count = 1;

  double at(std::uint64_t i) const;
};

/// Strict line-oriented key = value settings.
class Config {
 public:
  struct Entry {
    std::string value;
    int line = 0;  // 0 for values set from the command line
  };

  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  /// Every key the parser accepts.
  static const std::vector<std::string_view>& known_keys();

  bool empty() const { return entries_.empty(); }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  /// Replaces or adds a value from a command-line flag.
  void set(const std::string& key, std::string value);

  std::optional<std::string> text(const std::string& key) const;
  std::optional<double> number(const std::string& key) const;
  std::optional<std::uint64_t> count(const std::string& key) const;
  std::optional<bool> flag(const std::string& key) const;
  /// A grid, or a single value read as value:value:1.
  std::optional<Grid> grid(const std::string& key) const;

  double number_or(const std::string& key, double fallback) const;
  double require_number(const std::string& key, std::string_view needed_by) const;

  /// ConfigError naming the key and the line it was set on.
  [[noreturn]] void reject(const std::string& key, const std::string& message) const;

 private:
  const Entry* find(const std::string& key) const;

  std::map<std::string, Entry> entries_;
};

double parse_number(std::string_view text);

}  // namespace filadyn::cli
