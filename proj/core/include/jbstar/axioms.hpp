#pragma once

#include <cstdint>

#include "jbstar/algebra.hpp"
#include "jbstar/report.hpp"

namespace jbstar {

/// ‖(a∘b)∘b² − (a∘b²)∘b‖
double jordan_identity_residual(const Algebra& A, const Element& a, const Element& b);
/// |‖U_a(a*)‖ − ‖a‖³|
double jbstar_axiom_residual(const Algebra& A, const Element& a);

/// Jordan identity over random pairs; threshold 1e-8·(1 + ‖a‖‖b‖³).
CheckReport jordan_identity_check(const Algebra& A, std::size_t trials, std::uint64_t seed);
/// Norm identity ‖U_a(a*)‖ = ‖a‖³; threshold 1e-6·(1 + ‖a‖³).
CheckReport jbstar_axiom_check(const Algebra& A, std::size_t trials, std::uint64_t seed);

/// Runs both checks on `samples` random elements and throws
/// VerificationFailed when either fails.
void verify_algebra_axioms(const Algebra& A, std::size_t samples, std::uint64_t seed);

}  // namespace jbstar
