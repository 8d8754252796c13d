#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jbstar/algebra.hpp"
#include "jbstar/report.hpp"
#include "jbstar/sampling.hpp"

namespace jbstar {

using ElementMap = std::function<Element(const Element&)>;

/// A candidate map Φ between two algebras. Bijectivity is never inferred:
/// checks that need it require `inverse` and round-trip test it.
struct MapUnderTest {
  Algebra source;
  Algebra target;
  ElementMap eval;
  std::string label;
  ElementMap inverse;  // optional

  /// Checks that x lives in source and the image in target.
  Element operator()(const Element& x) const;
  Element invert(const Element& y) const;  // PreconditionFailed without inverse
  bool has_inverse() const noexcept { return static_cast<bool>(inverse); }
};

// ---------------------------------------------------------------- map library

MapUnderTest identity_map(const Algebra& A);
MapUnderTest negation_map(const Algebra& A);
/// x ↦ x*. Conjugate linear; on unitaries it is u ↦ u⁻¹.
MapUnderTest star_map(const Algebra& A);
/// x ↦ w x w* for a unitary matrix w (HermitianMatrix only).
MapUnderTest conjugation_map(const Algebra& A, const Element& w);
/// x ↦ xᵀ (HermitianMatrix only).
MapUnderTest transpose_map(const Algebra& A);
/// x ↦ U_w(x) for a unitary w; a bijection of the unitary set that moves 1
/// to w² and so is not unital unless w² = 1.
MapUnderTest u_operator_map(const Algebra& A, const Element& w);
/// (x₁, …, x_k) ↦ (x_{σ(1)}, …) for a permutation of equal summands.
MapUnderTest summand_permutation_map(const Algebra& A, const std::vector<std::size_t>& perm);
/// Componentwise maps on a direct sum (one map per part, same shapes).
MapUnderTest direct_sum_map(const Algebra& source, const Algebra& target,
                            const std::vector<MapUnderTest>& parts);
/// x ↦ a∘a; quadratic but not additive.
MapUnderTest square_map(const Algebra& A);
/// Linear map given by a coordinate matrix (target.dim × source.dim).
MapUnderTest linear_map(const Algebra& source, const Algebra& target, const ComplexMatrix& m,
                        std::string label = "linear");
/// outer ∘ inner
MapUnderTest compose(const MapUnderTest& outer, const MapUnderTest& inner);
/// x ↦ e^{iφ}θ(x)
MapUnderTest phase_map(const MapUnderTest& theta, double phi);
/// x ↦ θ(x)∘s for a central symmetry s of the target.
MapUnderTest central_symmetry_twist(const MapUnderTest& theta, const Element& s);
/// On unitaries u = e^{ia} (principal a): u ↦ e^{iβ(a)}∘e^{i c∘θ(a)}.
MapUnderTest exp_form_map(const MapUnderTest& theta, ElementMap beta, const Element& c);
/// On unitaries u = e^{ia}: u ↦ e^{i g(a)} with g(a) = a + ε a∘a/‖a‖.
/// Homogeneous for positive scalars only and not additive.
MapUnderTest generator_warp_map(const Algebra& A, double epsilon);

// ---------------------------------------------------------------- checks

/// max ‖Φ(a+b) − Φ(a) − Φ(b)‖ over operator-commuting self-adjoint pairs;
/// each trial passes when the residual is ≤ factor·(1 + ‖a‖ + ‖b‖). Throws
/// SamplerViolation if a sampled pair does not operator commute.
CheckReport check_oc_additive(const MapUnderTest& m, OcStrategy strategy, std::size_t trials,
                              std::uint64_t seed, double factor = 1e-9);

/// max ‖Φ(U_a(b)) − U_{Φ(a)}(Φ(b))‖ over operator-commuting self-adjoint
/// pairs; threshold factor·(1+‖a‖)²(1+‖b‖).
CheckReport check_oc_quadratic(const MapUnderTest& m, OcStrategy strategy, std::size_t trials,
                               std::uint64_t seed, double factor = 1e-8);

/// Φ(1) = 1, and for operator-commuting unitaries u, v: Φ(u∘v) = Φ(u)∘Φ(v)
/// with Φ(u), Φ(v) operator commuting. Throws NonUnitaryImage.
CheckReport check_piecewise_hom_on_unitaries(const MapUnderTest& m, OcStrategy strategy,
                                             std::size_t trials, std::uint64_t seed);

/// Negative control: the same multiplicativity identity on random
/// non-commuting unitaries. Fails as expected when it is violated.
CheckReport check_hom_on_noncommuting_unitaries(const MapUnderTest& m, std::size_t trials,
                                                std::uint64_t seed);

/// f(a) = log Φ(e^{ita}) / t, cross-checked against the same with t/2.
/// Throws BranchAmbiguity, NotUnitary (image), or Inconsistent.
Element derive_generator_map(const MapUnderTest& m, const Element& a, double t_small);

/// Homogeneity, additivity and commutativity preservation of the generator
/// map f on sampled pairs. Metric "bound" estimates sup ‖f(a)‖/‖a‖.
CheckReport check_generator_properties(const MapUnderTest& m, OcStrategy strategy, std::size_t trials,
                                       std::uint64_t seed);

/// Re-verifies that θ is a unital Jordan *-isomorphism on samples: complex
/// linear, multiplicative, *-preserving, with a working inverse. Throws
/// PreconditionFailed naming the property that broke.
void verify_jordan_star_isomorphism(const MapUnderTest& theta, std::size_t samples, std::uint64_t seed);

/// Compares Φ(e^{ia}) with e^{iβ(a)}∘e^{i c∘θ(a)} and with
/// e^{iβ(a)}∘θ(e^{i θ⁻¹(c)∘a}) for random self-adjoint a with ‖a‖ < 3.
/// Throws PreconditionFailed when θ, c or β break their hypotheses.
CheckReport verify_unitary_preserver_form(const MapUnderTest& m, const MapUnderTest& theta,
                                          const ElementMap& beta, const Element& c, std::size_t trials,
                                          std::uint64_t seed);

enum class Dichotomy { IdentityCase, InverseCase, Neither };
std::string_view to_string(Dichotomy d) noexcept;

struct DichotomyResult {
  Dichotomy verdict = Dichotomy::Neither;
  double identity_residual = 0.0;  // max ‖Φ(u) − θ(u)‖
  double inverse_residual = 0.0;   // max ‖Φ(u) − θ(u*)‖
  std::optional<std::string> witness;
};

/// Φ(u) = θ(u) or Φ(u) = θ(u⁻¹) on random unitaries. The source must be a
/// factor without spin-like summands, else NotAFactor.
DichotomyResult classify_factor_dichotomy(const MapUnderTest& m, const MapUnderTest& theta,
                                          std::size_t trials, std::uint64_t seed);

struct RecoveryOptions {
  OcStrategy strategy = OcStrategy::SameGenerator;
  std::size_t hypothesis_trials = 100;
  bool check_isometry = true;
};

/// Residuals are divided by the natural scale of each trial.
struct StructureRecovery {
  Element w;  // Φ(1)
  Algebra peirce2;
  double hom_residual = 0.0;          // Φ(a∘b) vs Φ(a)∘_w Φ(b), operator-commuting pairs
  double general_hom_residual = 0.0;  // same on arbitrary self-adjoint pairs
  double linearity_residual = 0.0;    // Φ(ra+sb) vs rΦ(a)+sΦ(b), arbitrary pairs
  double carrier_residual = 0.0;      // distance of Φ(a) from the Peirce-2 space
  std::optional<bool> bijective;      // set when an inverse is supplied
  std::optional<bool> w_central_symmetry;
  std::optional<double> isometry_residual;
};

/// Runs the structure-recovery pipeline. Throws HypothesisFailed when the
/// operator-commuting additivity or quadratic check fails, or Φ(1) is not a
/// self-adjoint tripotent.
StructureRecovery recover_structure(const MapUnderTest& m, std::size_t trials, std::uint64_t seed,
                                    const RecoveryOptions& options = {});

/// Turns a recovery into a report. Passes when every residual is ≤
/// threshold, a bijective map has Φ(1) a central symmetry, and (only when
/// gate_isometry) the sampled isometry defect is ≤ threshold.
CheckReport structure_recovery_report(const StructureRecovery& s, double threshold = 1e-6,
                                      bool gate_isometry = false);

/// Central unitaries and symmetries map onto central unitaries and
/// symmetries (both directions via the supplied inverse), and the induced
/// projection map Ψ(p) = (1 − Φ(1 − 2p))/2 preserves operator commutativity.
CheckReport check_central_preservation(const MapUnderTest& m, std::size_t trials, std::uint64_t seed);

/// Optional check for full-algebra maps: z = (w − iΦ(i1))/2 is a central
/// projection of the Peirce-2 algebra of w = Φ(1), so that
/// Φ(i1) = i(z − (w − z)).
CheckReport check_phi_i1(const MapUnderTest& m);

// ---------------------------------------------------------------- spin counterexample

/// Φ(λ1 + h) = λ1 + F(h) on the self-adjoint part of spin(n). F rotates the
/// first two H⁻ coordinates by the angle warp φ ↦ φ + ε sin 2φ and keeps the
/// rest: odd, 1-homogeneous and norm preserving but not additive.
struct SpinCounterexample {
  Algebra algebra;
  double epsilon = 0.0;
  MapUnderTest map;  // with inverse
  std::uint64_t seed = 0;
};

/// Throws SizeOutOfRange for n < 3 and ParamOutOfRange unless 0 < ε < 0.5.
SpinCounterexample build_spin_counterexample(std::size_t n, double epsilon, std::uint64_t seed = 0);

/// U_a(b) for a = α1 + h, b = t1 + s·a in closed form:
/// (α²t + sα³ + (3αs+t)‖h‖²)1 + (2αt + 3sα² + s‖h‖²)h.
Element spin_u_closed_form(const Algebra& S, double alpha, const Element& h, double t, double s);
/// (α²t + sα³ + (2αs+t)‖h‖²)1 + (2αt + 3sα²)h, an expansion that drops
/// αs‖h‖² and s‖h‖²h. Kept for comparison only.
Element spin_u_truncated_form(const Algebra& S, double alpha, const Element& h, double t, double s);

/// Four reports: OC additivity, OC quadratic (with closed-form cross
/// check), the global-additivity witness (negative control) and
/// bijectivity of the supplied inverse.
std::vector<CheckReport> verify_counterexample(const SpinCounterexample& cx, std::size_t trials,
                                               std::uint64_t seed);

}  // namespace jbstar
