#include "jbstar/error.hpp"

namespace jbstar {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorKind::EmptyParts: return "EmptyParts";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotTripotent: return "NotTripotent";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::SamplerViolation: return "SamplerViolation";
    case ErrorKind::NonUnitaryImage: return "NonUnitaryImage";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotAFactor: return "NotAFactor";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::AdditivityViolation: return "AdditivityViolation";
    case ErrorKind::ProjectionsDoNotSpan: return "ProjectionsDoNotSpan";
    case ErrorKind::TypeI2Present: return "TypeI2Present";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace jbstar
