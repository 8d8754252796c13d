#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jbstar {

enum class Outcome { Pass, Fail, FailAsExpected, UnexpectedPass };

std::string_view to_string(Outcome o) noexcept;

/// Outcome record of a property check. A check passes when every observed
/// residual stayed within its threshold. Negative controls set expected_fail;
/// for them a failure is the desired result.
struct CheckReport {
  std::string name;
  bool passed = true;
  bool expected_fail = false;
  std::size_t trials = 0;
  double max_residual = 0.0;
  double threshold = 0.0;  // threshold paired with max_residual
  std::optional<std::string> witness;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  CheckReport() = default;
  explicit CheckReport(std::string n, bool negative_control = false)
      : name(std::move(n)), expected_fail(negative_control) {}

  /// Records one trial. The witness is kept for the first violation, or for
  /// the worst residual when nothing has failed yet.
  void observe(double residual, double limit, const std::string& witness_text = {});
  /// Marks failure without a residual (e.g. an exception during a trial).
  void fail(const std::string& witness_text);
  void metric(std::string key, double value);
  void note(std::string text) { notes.push_back(std::move(text)); }
  /// Folds another report's trials in (max residual, conjunction of verdicts).
  void merge(const CheckReport& other);

  Outcome outcome() const noexcept;
  /// True unless this is an ordinary check that failed, or a negative
  /// control that passed.
  bool ok() const noexcept;
  std::optional<double> find_metric(std::string_view key) const;
};

/// Overall verdict: every ordinary check passed. Negative controls never
/// flip it.
bool all_ok(const std::vector<CheckReport>& reports) noexcept;

}  // namespace jbstar
