#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jbstar {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  DegenerateInput,
  RankDeficient,
  SizeOutOfRange,
  EmptyParts,
  AlgebraMismatch,
  NotSelfAdjoint,
  IllConditioned,
  VerificationFailed,
  NotTripotent,
  NotUnitary,
  NotProjection,
  BranchAmbiguity,
  SamplerViolation,
  NonUnitaryImage,
  Inconsistent,
  PreconditionFailed,
  NotAFactor,
  HypothesisFailed,
  ParamOutOfRange,
  AdditivityViolation,
  ProjectionsDoNotSpan,
  TypeI2Present,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI) can branch on the category rather than the text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jbstar
