#include "jbstar/axioms.hpp"

#include <cmath>
#include <sstream>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"
#include "jbstar/sampling.hpp"

namespace jbstar {

double jordan_identity_residual(const Algebra& A, const Element& a, const Element& b) {
  const Element b2 = A.product(b, b);
  return A.distance(A.product(A.product(a, b), b2), A.product(A.product(a, b2), b));
}

double jbstar_axiom_residual(const Algebra& A, const Element& a) {
  const double na = A.norm(a);
  return std::abs(A.norm(u_operator(A, a, A.involution(a))) - na * na * na);
}

CheckReport jordan_identity_check(const Algebra& A, std::size_t trials, std::uint64_t seed) {
  CheckReport r("jordan-identity");
  for (std::size_t k = 0; k < trials; ++k) {
    const Element a = random_element(A, derive_seed(seed, 2 * k), Flavor::General);
    const Element b = random_element(A, derive_seed(seed, 2 * k + 1), Flavor::General);
    const double nb = A.norm(b);
    std::ostringstream w;
    w << A.describe() << " trial " << k;
    r.observe(jordan_identity_residual(A, a, b), 1e-8 * (1.0 + A.norm(a) * nb * nb * nb), w.str());
  }
  return r;
}

CheckReport jbstar_axiom_check(const Algebra& A, std::size_t trials, std::uint64_t seed) {
  CheckReport r("jbstar-axiom");
  for (std::size_t k = 0; k < trials; ++k) {
    const Element a = random_element(A, derive_seed(seed, k), Flavor::General);
    const double na = A.norm(a);
    std::ostringstream w;
    w << A.describe() << " trial " << k;
    r.observe(jbstar_axiom_residual(A, a), 1e-6 * (1.0 + na * na * na), w.str());
  }
  return r;
}

void verify_algebra_axioms(const Algebra& A, std::size_t samples, std::uint64_t seed) {
  const CheckReport j = jordan_identity_check(A, samples, seed);
  const CheckReport n = jbstar_axiom_check(A, samples, seed ^ 0x9e37);
  for (const auto* r : {&j, &n})
    if (!r->passed) {
      std::ostringstream os;
      os << r->name << " residual " << r->max_residual << " on " << A.describe();
      throw Error(ErrorKind::VerificationFailed, os.str());
    }
}

}  // namespace jbstar
