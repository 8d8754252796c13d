#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jbstar/numeric.hpp"

namespace jbstar {

namespace detail {
class Model;
}

/// Coordinate vector over an algebra's fixed basis, tagged with the algebra's
/// identity. Arithmetic between elements of different algebras throws
/// AlgebraMismatch.
class Element {
 public:
  Element() = default;
  Element(std::uint64_t algebra_id, std::vector<Complex> coords);

  std::uint64_t algebra_id() const noexcept { return algebra_id_; }
  std::span<const Complex> coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  const Complex& operator[](std::size_t i) const noexcept { return coords_[i]; }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= -1.0; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  friend Element operator*(double s, Element a) { return a *= s; }
  friend Element operator/(Element a, Complex s) { return a *= (1.0 / s); }
  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::uint64_t algebra_id_ = 0;
  std::vector<Complex> coords_;
};

enum class AlgebraKind { HermitianMatrix, Spin, DirectSum, Peirce2 };

std::string_view to_string(AlgebraKind kind) noexcept;

/// Immutable, cheaply copyable handle to a concrete finite-dimensional
/// JB*-algebra model.
///
/// * HermitianMatrix(n): the full matrix algebra M_n(C) with a∘b = (ab+ba)/2,
///   conjugate-transpose involution and the operator norm; basis E_jk in
///   row-major order.
/// * Spin(n): C^n with componentwise conjugation, 1 = e_0,
///   x∘y = ⟨x|1⟩y + ⟨y|1⟩x − ⟨x|ȳ⟩1, x* = 2⟨1|x⟩1 − x̄, where ⟨x|y⟩ = Σ x_i conj(y_i).
/// * DirectSum(parts): concatenated coordinates, componentwise operations,
///   max-norm over parts.
/// * Peirce2: the range of P_2(e) for a tripotent e of an ambient algebra,
///   with a∘_e b = {a,e,b}, a^{*_e} = {e,a,e}, and the ambient norm. Built by
///   peirce2_algebra().
class Algebra {
 public:
  Algebra() = default;

  AlgebraKind kind() const;
  std::size_t dim() const;
  std::uint64_t id() const;
  const Tolerance& tol() const;
  std::string describe() const;

  const Element& unit() const;
  Element zero() const;
  Element basis(std::size_t k) const;
  Element scalar(Complex lambda) const;
  /// Wraps coordinates; throws AlgebraMismatch on length mismatch or
  /// non-finite entries.
  Element element(std::vector<Complex> coords) const;
  /// Throws AlgebraMismatch unless x belongs to this algebra.
  void check(const Element& x) const;
  bool owns(const Element& x) const noexcept;

  /// Symmetrised Jordan product: product(a,b) == product(b,a) bit for bit.
  Element product(const Element& a, const Element& b) const;
  Element involution(const Element& a) const;
  double norm(const Element& a) const;
  /// ‖x − y‖ in the algebra norm.
  double distance(const Element& x, const Element& y) const;

  /// Same model with a different tolerance policy (fresh identity).
  Algebra with_tolerance(const Tolerance& tol) const;

  // Model-specific views. Each throws PreconditionFailed on the wrong kind.
  std::size_t order() const;  // n for HermitianMatrix(n) and Spin(n)
  ComplexMatrix to_matrix(const Element& x) const;
  Element from_matrix(const ComplexMatrix& m) const;
  const std::vector<Algebra>& parts() const;
  std::size_t part_offset(std::size_t k) const;
  Element component(const Element& x, std::size_t k) const;
  Element from_components(std::span<const Element> comps) const;
  const Algebra& ambient() const;
  const Element& peirce_tripotent() const;  // in ambient coordinates
  Element embed(const Element& x) const;    // Peirce2 coords → ambient
  Element restrict(const Element& y) const; // ambient → Peirce2 coords

  friend bool operator==(const Algebra& a, const Algebra& b) noexcept {
    return a.model_ == b.model_;
  }

 private:
  friend Algebra build_hermitian_matrix_algebra(std::size_t, const Tolerance&);
  friend Algebra build_spin_factor(std::size_t, const Tolerance&);
  friend Algebra build_direct_sum(std::vector<Algebra>);
  friend Algebra build_peirce2(const Algebra&, const Element&, const ComplexMatrix&);

  explicit Algebra(std::shared_ptr<const detail::Model> model) : model_(std::move(model)) {}
  const detail::Model& model() const;

  std::shared_ptr<const detail::Model> model_;
};

/// 1 <= n <= 12, else SizeOutOfRange.
Algebra build_hermitian_matrix_algebra(std::size_t n, const Tolerance& tol = {});
/// n >= 3, else SizeOutOfRange.
Algebra build_spin_factor(std::size_t n, const Tolerance& tol = {});
/// Non-empty parts, else EmptyParts. Uses the first part's tolerance.
Algebra build_direct_sum(std::vector<Algebra> parts);
/// Peirce-2 algebra over the orthonormal column basis `basis` of P_2(e).
/// Prefer peirce2_algebra() which computes the basis.
Algebra build_peirce2(const Algebra& ambient, const Element& e, const ComplexMatrix& basis);

enum class Flavor { General, SelfAdjoint, Positive, Projection, Unitary };

std::string_view to_string(Flavor flavor) noexcept;

/// Deterministic random element of the requested flavour.
Element random_element(const Algebra& a, std::uint64_t seed, Flavor flavor);

/// ‖a − a*‖
double self_adjoint_residual(const Algebra& a, const Element& x);
bool is_self_adjoint(const Algebra& a, const Element& x);
/// (x + x*)/2
Element self_adjoint_part(const Algebra& a, const Element& x);

/// Scale used for residual thresholds: 1 + ‖x‖.
inline double one_plus_norm(const Algebra& a, const Element& x) { return 1.0 + a.norm(x); }

}  // namespace jbstar
