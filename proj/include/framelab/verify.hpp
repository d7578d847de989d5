#pragma once

// Named check suites that recompute the worked examples and families and
// report one line per assertion.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace framelab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const noexcept;
};

struct VerifyOptions {
  std::optional<std::string> group;  ///< modulation, tightness
  std::optional<std::string> set;    ///< modulation, tightness
  std::size_t jobs = 1;
  std::size_t max_order = 10;  ///< etf-ds
};

const std::vector<std::string>& verify_suite_names();

/// Throws invalid_parameters for an unknown suite or missing --group/--set.
SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& options);

}  // namespace framelab
