#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "jbstar/algebra.hpp"
#include "jbstar/preserver.hpp"
#include "jbstar/report.hpp"

namespace jbstar {

/// f : A_sa → X where X = ℝ^d carries the max-norm.
using SaFunction = std::function<std::vector<double>(const Element&)>;

/// Φ(a) flattened to (Re, Im) pairs of the target coordinates.
SaFunction as_sa_function(const MapUnderTest& m);

/// Real orthonormal basis of A_sa for the real part of the coordinate inner
/// product.
std::vector<Element> self_adjoint_basis(const Algebra& A);
/// Coordinates of a self-adjoint element in self_adjoint_basis(A).
std::vector<double> self_adjoint_coords(const std::vector<Element>& basis, const Element& a);

struct ProjectionMeasure {
  Algebra algebra;
  SaFunction eval;
  std::size_t target_dim = 0;
  double bound = 0.0;  // max ‖μ(p)‖ over the probes
};

/// μ = f restricted to projections. Checks additivity on
/// operator-commuting pairs and finite additivity on
/// orthogonal projections (AdditivityViolation, with a witness).
ProjectionMeasure measure_from_map(const Algebra& A, const SaFunction& f, std::size_t bound_probe,
                                   std::uint64_t seed);

struct LinearReconstruction {
  std::vector<Element> basis;  // self_adjoint_basis of the algebra
  ComplexMatrix t;             // real entries, target_dim × basis.size()
  double misfit = 0.0;         // max ‖T(p) − μ(p)‖ over the probes
  std::size_t probes = 0;

  std::vector<double> apply(const Element& a) const;
};

/// Least-squares fit of a linear T with T(p) = μ(p) over sampled projections:
/// spectral projections of random self-adjoint elements, plus matrix-unit
/// projections for matrix algebras. Throws ProjectionsDoNotSpan or
/// RankDeficient.
LinearReconstruction linear_reconstruction(const ProjectionMeasure& mu, std::size_t probes, std::uint64_t seed);

enum class LinearityMode { TheoremGrade, Exploratory };
/// What theorem-grade mode does with a direct sum that has some, but not
/// only, spin-like summands (such as H₂ ⊕ H₃).
enum class MixedI2Policy { Refuse, Warn };

struct LinearityOptions {
  LinearityMode mode = LinearityMode::TheoremGrade;
  MixedI2Policy mixed_policy = MixedI2Policy::Refuse;
  std::size_t probes = 0;  // 0: max(64, 8·real dimension of A_sa)
  double threshold = 1e-7;
};

/// Checks the hypotheses (homogeneity, operator-commuting additivity, a
/// boundedness estimate), reconstructs T from projections, verifies
/// f(Σαⱼpⱼ) = Σαⱼf(pⱼ) on spectral decompositions and f = T on random
/// self-adjoint elements. Theorem-grade mode throws TypeI2Present for
/// spin-like summands and HypothesisFailed for broken hypotheses;
/// exploratory mode records both in the report.
CheckReport verify_linearity_theorem(const Algebra& A, const SaFunction& f, std::size_t trials,
                                     std::uint64_t seed, const LinearityOptions& options = {});

}  // namespace jbstar
