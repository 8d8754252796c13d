#include "jbstar/report.hpp"

#include <algorithm>

namespace jbstar {

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::FailAsExpected: return "fail-as-expected";
    case Outcome::UnexpectedPass: return "unexpected-pass";
  }
  return "?";
}

void CheckReport::observe(double residual, double limit, const std::string& witness_text) {
  ++trials;
  const bool violated = !(residual <= limit);  // NaN counts as a violation
  const bool worse = !(residual <= max_residual);
  if (worse || trials == 1) {
    max_residual = residual;
    threshold = limit;
  }
  if (violated) {
    if (passed && !witness_text.empty()) witness = witness_text;
    passed = false;
  } else if (passed && worse && !witness_text.empty()) {
    witness = witness_text;
  }
}

void CheckReport::fail(const std::string& witness_text) {
  ++trials;
  if (passed) witness = witness_text;
  passed = false;
}

void CheckReport::metric(std::string key, double value) {
  for (auto& [k, v] : metrics)
    if (k == key) {
      v = value;
      return;
    }
  metrics.emplace_back(std::move(key), value);
}

void CheckReport::merge(const CheckReport& other) {
  if (other.trials > 0 && (trials == 0 || !(other.max_residual <= max_residual))) {
    max_residual = other.max_residual;
    threshold = other.threshold;
  }
  trials += other.trials;
  if (!other.passed && passed) witness = other.witness;
  passed = passed && other.passed;
  for (const auto& n : other.notes) notes.push_back(n);
}

Outcome CheckReport::outcome() const noexcept {
  if (expected_fail) return passed ? Outcome::UnexpectedPass : Outcome::FailAsExpected;
  return passed ? Outcome::Pass : Outcome::Fail;
}

bool CheckReport::ok() const noexcept {
  const Outcome o = outcome();
  return o == Outcome::Pass || o == Outcome::FailAsExpected;
}

std::optional<double> CheckReport::find_metric(std::string_view key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  return std::nullopt;
}

bool all_ok(const std::vector<CheckReport>& reports) noexcept {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.expected_fail || r.passed; });
}

}  // namespace jbstar
