#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "filadyn/filadyn.h"
#include "report.hpp"

namespace filadyn::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitDomain = 3 };

/// Failure reported by the C API.
class ApiError : public std::runtime_error {
 public:
  ApiError(fd_status status, const std::string& message);
  fd_status status() const { return status_; }

 private:
  fd_status status_;
};

inline constexpr std::uint64_t kDefaultSeed = 20080601;
inline constexpr std::uint64_t kDefaultRowCap = 10'000'000;

/// Settings shared by every command once flags are folded into the config.
struct RunContext {
  Config config;
  Format format = Format::Csv;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

/// Builds the context, giving command-line flags precedence over the file.
RunContext make_context(Config config);

Report cmd_spectrum(const RunContext& ctx);
Report cmd_sweep(const RunContext& ctx);
/// Sets `all_passed` to the verdict.
Report cmd_verify(const RunContext& ctx, bool& all_passed);
Report cmd_abc(const RunContext& ctx, const std::string& sub);
Report cmd_frenet_check(const RunContext& ctx, bool& all_passed);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

}  // namespace filadyn::cli
