#include "jbstar/peirce.hpp"

#include <algorithm>
#include <sstream>

#include "jbstar/axioms.hpp"
#include "jbstar/error.hpp"
#include "jbstar/sampling.hpp"

namespace jbstar {

TripotentCheck is_tripotent(const Algebra& A, const Element& e) {
  A.check(e);
  TripotentCheck t;
  const double ne = A.norm(e);
  t.residual = A.distance(e, triple_product(A, e, e, e));
  t.threshold = A.tol().abs_eps * (1.0 + ne * ne * ne);
  t.tripotent = t.residual <= t.threshold;
  return t;
}

namespace {

void require_tripotent(const Algebra& A, const Element& e) {
  const TripotentCheck t = is_tripotent(A, e);
  if (!t) {
    std::ostringstream os;
    os << "‖e − {e,e,e}‖ = " << t.residual << " > " << t.threshold;
    throw Error(ErrorKind::NotTripotent, os.str());
  }
}

}  // namespace

PeirceSystem peirce_system(const Algebra& A, const Element& e) {
  require_tripotent(A, e);
  const std::size_t d = A.dim();
  PeirceSystem s;
  s.e = e;
  s.l_ee = OperatorMatrix(d, d);
  for (std::size_t k = 0; k < d; ++k) s.l_ee.set_column(k, triple_product(A, e, e, A.basis(k)).coords());

  const OperatorMatrix id = OperatorMatrix::identity(d);
  const OperatorMatrix& l = s.l_ee;
  s.p2 = l * (l * 2.0 - id);
  s.p1 = l * (id - l) * 4.0;
  s.p0 = (id - l) * (id - l * 2.0);

  double r = operator_norm(s.p2 + s.p1 + s.p0 - id);
  const OperatorMatrix* ps[] = {&s.p2, &s.p1, &s.p0};
  for (int i = 0; i < 3; ++i) {
    r = std::max(r, operator_norm(*ps[i] * *ps[i] - *ps[i]));
    for (int j = 0; j < 3; ++j)
      if (i != j) r = std::max(r, operator_norm(*ps[i] * *ps[j]));
  }
  const auto p2e = s.p2.apply(e.coords());
  std::vector<Complex> diff(d);
  for (std::size_t i = 0; i < d; ++i) diff[i] = p2e[i] - e[i];
  r = std::max(r, vector_norm(diff));
  s.residual = r;

  const double ne = A.norm(e);
  if (r > A.tol().cluster_eps * (1.0 + ne * ne * ne * ne)) {
    std::ostringstream os;
    os << "Peirce projections inconsistent, residual " << r;
    throw Error(ErrorKind::VerificationFailed, os.str());
  }
  return s;
}

Algebra peirce2_algebra(const Algebra& A, const Element& e) {
  const PeirceSystem s = peirce_system(A, e);
  const ComplexMatrix basis = column_space(s.p2, A.tol().abs_eps);
  if (basis.cols() == 0) throw Error(ErrorKind::DegenerateInput, "Peirce-2 space of the zero tripotent is trivial");
  Algebra P = build_peirce2(A, e, basis);
  verify_algebra_axioms(P, 8, 0x9e1ce);
  return P;
}

CheckReport kaup_identity_check(const Algebra& A, const Element& e, std::size_t trials,
                                std::uint64_t seed) {
  CheckReport r("kaup-identity");
  const Algebra P = peirce2_algebra(A, e);
  for (std::size_t k = 0; k < trials; ++k) {
    const Element a = random_element(P, derive_seed(seed, 3 * k), Flavor::General);
    const Element b = random_element(P, derive_seed(seed, 3 * k + 1), Flavor::General);
    const Element c = random_element(P, derive_seed(seed, 3 * k + 2), Flavor::General);
    // (a ∘_e b^{*_e}) ∘_e c + (c ∘_e b^{*_e}) ∘_e a − (a ∘_e c) ∘_e b^{*_e}
    const Element bs = P.involution(b);
    const Element inner_side = P.product(P.product(a, bs), c) + P.product(P.product(c, bs), a) -
                               P.product(P.product(a, c), bs);
    const Element ambient_side = triple_product(A, P.embed(a), P.embed(b), P.embed(c));
    const double res = A.distance(P.embed(inner_side), ambient_side);
    const double scale = (1.0 + P.norm(a)) * (1.0 + P.norm(b)) * (1.0 + P.norm(c));
    std::ostringstream w;
    w << A.describe() << " trial " << k;
    r.observe(res, 1e-7 * scale, w.str());
  }
  r.metric("peirce2_dim", static_cast<double>(P.dim()));
  return r;
}

}  // namespace jbstar
