#pragma once

#include <cstdint>

#include "jbstar/algebra.hpp"
#include "jbstar/calculus.hpp"
#include "jbstar/report.hpp"

namespace jbstar {

struct TripotentCheck {
  bool tripotent = false;
  double residual = 0.0;   // ‖e − {e,e,e}‖
  double threshold = 0.0;  // abs_eps·(1 + ‖e‖³)
  explicit operator bool() const noexcept { return tripotent; }
};

TripotentCheck is_tripotent(const Algebra& A, const Element& e);

/// Peirce projections of a tripotent, as matrices on the coordinate space.
struct PeirceSystem {
  Element e;
  OperatorMatrix l_ee;  // x ↦ {e,e,x}
  OperatorMatrix p2, p1, p0;
  /// Largest of the sum, idempotency, orthogonality and P₂(e) = e defects.
  double residual = 0.0;
};

/// P₂ = L(2L − I), P₁ = 4L(I − L), P₀ = (I − L)(I − 2L) with L = L(e,e).
/// Throws NotTripotent, or VerificationFailed if the invariants are off by
/// more than cluster_eps.
PeirceSystem peirce_system(const Algebra& A, const Element& e);

/// The range of P₂(e) with a∘_e b = {a,e,b} and a^{*_e} = {e,a,e}; unit e.
/// Axioms are re-checked on random samples of the result. Throws
/// NotTripotent, DegenerateInput for e = 0, or VerificationFailed.
Algebra peirce2_algebra(const Algebra& A, const Element& e);

/// Compares the ambient triple product with the one rebuilt from the Peirce-2
/// product and involution on random a, b, c in the Peirce-2 space; threshold
/// 1e-7·(1+‖a‖)(1+‖b‖)(1+‖c‖).
CheckReport kaup_identity_check(const Algebra& A, const Element& e, std::size_t trials,
                                std::uint64_t seed);

}  // namespace jbstar
