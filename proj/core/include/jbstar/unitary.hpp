#pragma once

#include <cstdint>

#include "jbstar/algebra.hpp"
#include "jbstar/report.hpp"
#include "jbstar/sampling.hpp"

namespace jbstar {

struct UnitaryCheck {
  bool unitary = false;
  double residual = 0.0;   // max(‖u∘u* − 1‖, ‖u²∘u* − u‖)
  double threshold = 0.0;  // abs_eps·(1 + ‖u‖)³
  explicit operator bool() const noexcept { return unitary; }
};

UnitaryCheck is_unitary(const Algebra& A, const Element& u);
/// Self-adjoint with s∘s = 1.
bool is_symmetry(const Algebra& A, const Element& s);

struct UnitaryLog {
  Element h;                      // self-adjoint, spectrum in (−π, π]
  bool branch_ambiguous = false;  // some eigenvalue within cluster_eps of −1
  double residual = 0.0;          // ‖exp_i(h,1) − u‖
};

/// Principal logarithm. Throws NotUnitary when u is not unitary or its
/// spectrum leaves the unit circle. Eigenvalues near −1 get argument π and
/// set branch_ambiguous.
UnitaryLog unitary_log(const Algebra& A, const Element& u);

/// uⁿ = exp_i(log u, n). Stays inside the subalgebra generated by u.
Element unitary_power(const Algebra& A, const Element& u, int n);

/// p + q − 2p∘q. Throws NotProjection.
Element symmetric_difference(const Algebra& A, const Element& p, const Element& q);

/// u∘v is unitary for operator-commuting unitaries u = e^{ih}, v = e^{ik};
/// threshold 1e-7.
CheckReport oc_unitary_product_check(const Algebra& A, OcStrategy strategy, std::size_t trials,
                                     std::uint64_t seed);

/// Negative control: searches random non-commuting unitaries until u∘v fails
/// to be unitary by more than 0.1. Fails as expected when a witness is found.
CheckReport noncommuting_unitary_product_control(const Algebra& A, std::size_t attempts,
                                                 std::uint64_t seed);

/// For operator-commuting h, k and s, t ∈ {−1, −½, ½, 1} checks
///   (a) e^{ith} and e^{itk} operator commute,
///   (b) U_{e^{ith}}(e^{2isk}) = U_{e^{isk}}(e^{2ith}),
///   (c) u = e^{ih} operator commutes with v = e^{ik} and v*,
///   (d) h and k operator commute.
/// Threshold 1e-7 on scale-free residuals. Metrics give each item's maximum.
CheckReport oc_unitary_equivalences_check(const Algebra& A, OcStrategy strategy, std::size_t trials,
                                          std::uint64_t seed);

/// Converse direction: on random non-commuting h, k the largest of the four
/// residuals above must reach 10 × 1e-7. Fails with the pair that did not.
CheckReport oc_equivalences_detection_check(const Algebra& A, std::size_t trials, std::uint64_t seed);

/// n‖u − 1‖ ≤ (π/2)‖uⁿ − 1‖ + 1e-9 for sampled u near 1 and n‖u − 1‖ < 2.
CheckReport circle_inequality_check(const Algebra& A, std::size_t trials, std::uint64_t seed);

/// For operator-commuting projections p, q: pΔq is a projection and
/// 1 − 2(pΔq) = (1 − 2p)∘(1 − 2q); threshold 1e-8.
CheckReport symmetric_difference_check(const Algebra& A, OcStrategy strategy, std::size_t trials,
                                       std::uint64_t seed);

}  // namespace jbstar
