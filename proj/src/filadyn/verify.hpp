#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace filadyn {

struct VerifyOptions {
  std::uint64_t seed = 20080601;
  /// Step and horizon of the spectral-vs-temporal suites.
  double dt = 1e-3;
  double t_end = 20.0;
  int draws = 100;
  /// Coarse step of the convergence-order suite; the suite compares it with its half.
  double order_dt = 0.1;
  /// Integrate with eq13_14 while the spectrum uses eq18 (negative control).
  bool inject_scheme_mismatch = false;
  unsigned threads = 0;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  /// Worst observed value of the checked quantity: the largest residual, or
  /// the smallest ratio for the convergence-order suite.
  double worst = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Runs every self-verification suite. Deterministic for a given seed.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

}  // namespace filadyn
