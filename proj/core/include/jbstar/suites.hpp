#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jbstar/numeric.hpp"
#include "jbstar/report.hpp"

namespace jbstar {

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> algebra_path;
  std::optional<std::filesystem::path> map_path;
  /// Inline descriptors, used instead of the files when set.
  std::optional<std::string> algebra_json;
  std::optional<std::string> map_json;
  /// Reference isomorphism θ for factor-dichotomy; otherwise taken from the
  /// map descriptor.
  std::optional<std::filesystem::path> theta_path;
  std::optional<std::string> theta_json;
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  Tolerance tol;
  std::optional<double> epsilon;  // counterexample warp
  bool exploratory = false;       // linearity: exploratory instead of theorem-grade
  bool warn_mixed_i2 = false;     // linearity: warn instead of refusing on H₂ ⊕ ...
  bool gate_isometry = false;     // structure-recovery
  std::optional<std::filesystem::path> out_path;
};

/// Thrown for bad configurations and unreadable inputs. Maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteInfo {
  std::string name;
  std::string description;
};

std::vector<SuiteInfo> list_suites();

struct ReportDocument {
  std::string tool_version;
  RunConfig config;
  std::string algebra_descriptor;  // empty when the suite needs none
  std::vector<CheckReport> checks;
  bool passed = false;  // every check that is not a negative control passed
  double duration_seconds = 0.0;

  /// "schema": 1 document. Without timing the output is a pure function of
  /// the configuration.
  std::string to_json(bool include_timing = true) const;
  std::string summary() const;
};

/// Runs the named suite. Library errors raised while checking become failed
/// checks; configuration problems raise UsageError.
ReportDocument run_suite(const RunConfig& config);

/// 0 when the document passed, 1 otherwise.
int exit_status(const ReportDocument& doc) noexcept;

std::string tool_version();

}  // namespace jbstar
