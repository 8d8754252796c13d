#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "jbstar/algebra.hpp"

namespace jbstar {

/// Matrix of a linear operator on the algebra's coordinate space.
using OperatorMatrix = ComplexMatrix;

/// Matrix of x ↦ a∘x.
OperatorMatrix mult_operator(const Algebra& A, const Element& a);
/// Matrix of x ↦ U_a(x).
OperatorMatrix u_operator_matrix(const Algebra& A, const Element& a);

/// U_a(b) = 2(a∘b)∘a − a²∘b
Element u_operator(const Algebra& A, const Element& a, const Element& b);
/// U_{a,b}(c) = (a∘c)∘b + (b∘c)∘a − (a∘b)∘c
Element u_operator_bilinear(const Algebra& A, const Element& a, const Element& b, const Element& c);
/// {x,y,z} = (x∘y*)∘z + (z∘y*)∘x − (x∘z)∘y*
Element triple_product(const Algebra& A, const Element& x, const Element& y, const Element& z);
/// [a,c,b] = (a∘c)∘b − a∘(c∘b)
Element associator(const Algebra& A, const Element& a, const Element& c, const Element& b);
/// a∘a∘…∘a (n factors, a⁰ = 1)
Element jordan_power(const Algebra& A, const Element& a, unsigned n);

struct Commutation {
  bool commute = false;
  double residual = 0.0;   // ‖M_aM_b − M_bM_a‖ (operator norm)
  double threshold = 0.0;  // abs_eps·(1+‖a‖)(1+‖b‖)
  bool borderline = false; // residual within a factor 10 of threshold
};

Commutation operator_commutes(const Algebra& A, const Element& a, const Element& b);

/// Orthonormal (coordinate inner product) basis of the centre.
std::vector<Element> center_basis(const Algebra& A);
bool is_factor(const Algebra& A);
/// Distance from x to the centre, measured in coordinates.
double center_residual(const Algebra& A, const std::vector<Element>& centre, const Element& x);

/// Inverse via U_a⁻¹(a), verified against a∘b = 1 and a²∘b = a.
std::optional<Element> is_invertible(const Algebra& A, const Element& a);

struct SpectralDecomposition {
  std::vector<std::pair<double, Element>> pairs;  // ascending eigenvalue
  double residual = 0.0;                          // ‖a − Σλe‖
};

/// Same idea for elements with complex spectrum (normal elements such as
/// unitaries). Idempotents are not required to be self-adjoint.
struct ComplexSpectralDecomposition {
  std::vector<std::pair<Complex, Element>> pairs;
  double residual = 0.0;
};

/// Real spectrum of a self-adjoint element from its Jordan minimal polynomial.
std::vector<double> jordan_spectrum(const Algebra& A, const Element& a);
SpectralDecomposition spectral_decomposition(const Algebra& A, const Element& a);
ComplexSpectralDecomposition complex_spectral_decomposition(const Algebra& A, const Element& a);

Element functional_calculus(const Algebra& A, const Element& a, const std::function<double(double)>& f);
Element functional_calculus(const SpectralDecomposition& sd, const Algebra& A,
                            const std::function<Complex(double)>& f);
/// Σ e^{itλ} e_λ
Element exp_i(const Algebra& A, const Element& h, double t);
bool is_positive(const Algebra& A, const Element& a);
/// Positive square root via functional calculus.
Element sqrt_positive(const Algebra& A, const Element& a);

/// True when p = p* = p∘p within tolerance.
bool is_projection(const Algebra& A, const Element& p);
double projection_residual(const Algebra& A, const Element& p);

/// Minimal central projections (mutually orthogonal, summing to 1).
std::vector<Element> minimal_central_projections(const Algebra& A);

struct SummandType {
  Element central_projection;
  std::size_t dim = 0;      // complex dimension of the summand
  bool spin_like = false;   // a∘a ∈ span{a, z} for sampled self-adjoint a
};

/// Type-I₂ detection: one entry per minimal central projection. A summand is
/// spin-like when dim ≥ 3 and every sampled self-adjoint a satisfies
/// a∘a ∈ span{a, z}. H₂ is flagged.
std::vector<SummandType> classify_summands(const Algebra& A, std::uint64_t seed = 7);
bool has_type_i2_summand(const Algebra& A);

}  // namespace jbstar
