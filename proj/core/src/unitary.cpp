#include "jbstar/unitary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"

namespace jbstar {

UnitaryCheck is_unitary(const Algebra& A, const Element& u) {
  A.check(u);
  UnitaryCheck c;
  const Element us = A.involution(u);
  const double r1 = A.distance(A.product(u, us), A.unit());
  const double r2 = A.distance(A.product(A.product(u, u), us), u);
  c.residual = std::max(r1, r2);
  const double s = one_plus_norm(A, u);
  c.threshold = A.tol().abs_eps * s * s * s;
  c.unitary = c.residual <= c.threshold;
  return c;
}

bool is_symmetry(const Algebra& A, const Element& s) {
  A.check(s);
  const double scale = one_plus_norm(A, s);
  return is_self_adjoint(A, s) &&
         A.distance(A.product(s, s), A.unit()) <= A.tol().abs_eps * scale * scale;
}

UnitaryLog unitary_log(const Algebra& A, const Element& u) {
  const UnitaryCheck uc = is_unitary(A, u);
  if (!uc) {
    std::ostringstream os;
    os << "unitarity residual " << uc.residual;
    throw Error(ErrorKind::NotUnitary, os.str());
  }
  const auto sd = complex_spectral_decomposition(A, u);
  const double ceps = A.tol().cluster_eps;
  UnitaryLog out;
  out.h = A.zero();
  for (const auto& [lambda, e] : sd.pairs) {
    if (std::abs(std::abs(lambda) - 1.0) > ceps)
      throw Error(ErrorKind::NotUnitary, "eigenvalue off the unit circle");
    double theta = std::arg(lambda);
    if (std::abs(lambda + 1.0) <= ceps) {
      out.branch_ambiguous = true;
      theta = std::numbers::pi;
    }
    out.h += e * theta;
  }
  out.h = self_adjoint_part(A, out.h);
  out.residual = A.distance(exp_i(A, out.h, 1.0), u);
  if (out.residual > 1e-6) {
    std::ostringstream os;
    os << "logarithm does not reproduce u, residual " << out.residual;
    throw Error(ErrorKind::VerificationFailed, os.str());
  }
  return out;
}

Element unitary_power(const Algebra& A, const Element& u, int n) {
  if (n == 0) return A.unit();
  if (n == 1) return u;
  return exp_i(A, unitary_log(A, u).h, static_cast<double>(n));
}

Element symmetric_difference(const Algebra& A, const Element& p, const Element& q) {
  for (const Element* x : {&p, &q})
    if (!is_projection(A, *x)) {
      std::ostringstream os;
      os << "projection residual " << projection_residual(A, *x);
      throw Error(ErrorKind::NotProjection, os.str());
    }
  return p + q - 2.0 * A.product(p, q);
}

namespace {

std::string describe_trial(const Algebra& A, std::size_t k) {
  std::ostringstream os;
  os << A.describe() << " trial " << k;
  return os.str();
}

double scaled_commutator(const Algebra& A, const Element& a, const Element& b) {
  return operator_commutes(A, a, b).residual / (one_plus_norm(A, a) * one_plus_norm(A, b));
}

constexpr std::array<double, 4> kGrid = {-1.0, -0.5, 0.5, 1.0};
constexpr double kEquivTol = 1e-7;

struct EquivalenceResiduals {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double max() const { return std::max({a, b, c, d}); }
};

EquivalenceResiduals equivalence_residuals(const Algebra& A, const Element& h, const Element& k) {
  EquivalenceResiduals r;
  const auto sh = spectral_decomposition(A, h);
  const auto sk = spectral_decomposition(A, k);
  auto ex = [&](const SpectralDecomposition& sd, double t) {
    return functional_calculus(sd, A, [t](double l) { return std::polar(1.0, t * l); });
  };
  for (double t : kGrid) {
    r.a = std::max(r.a, scaled_commutator(A, ex(sh, t), ex(sk, t)));
    for (double s : kGrid) {
      const Element lhs = u_operator(A, ex(sh, t), ex(sk, 2 * s));
      const Element rhs = u_operator(A, ex(sk, s), ex(sh, 2 * t));
      r.b = std::max(r.b, A.distance(lhs, rhs));
    }
  }
  const Element u = ex(sh, 1.0);
  const Element v = ex(sk, 1.0);
  r.c = std::max(scaled_commutator(A, u, v), scaled_commutator(A, u, A.involution(v)));
  r.d = scaled_commutator(A, h, k);
  return r;
}

}  // namespace

CheckReport oc_unitary_product_check(const Algebra& A, OcStrategy strategy, std::size_t trials,
                                     std::uint64_t seed) {
  CheckReport r("oc-unitary-product");
  const OcPairSampler sampler(A, strategy);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [h, g] = sampler.sample(derive_seed(seed, k));
    const Element u = exp_i(A, h, 1.0);
    const Element v = exp_i(A, g, 1.0);
    r.observe(is_unitary(A, A.product(u, v)).residual, kEquivTol, describe_trial(A, k));
  }
  return r;
}

CheckReport noncommuting_unitary_product_control(const Algebra& A, std::size_t attempts,
                                                 std::uint64_t seed) {
  CheckReport r("noncommuting-unitary-product", true);
  double best = 0.0;
  std::string witness;
  std::size_t k = 0;
  for (; k < attempts && best <= 0.1; ++k) {
    const auto [h, g] = random_noncommuting_pair(A, derive_seed(seed, k));
    const double res = is_unitary(A, A.product(exp_i(A, h, 3.0), exp_i(A, g, 3.0))).residual;
    if (res > best) {
      best = res;
      witness = describe_trial(A, k) + ": u∘v is not unitary";
    }
  }
  r.observe(best, 0.1, witness);
  r.trials = k;
  return r;
}

CheckReport oc_unitary_equivalences_check(const Algebra& A, OcStrategy strategy, std::size_t trials,
                                          std::uint64_t seed) {
  CheckReport r("oc-equivalences");
  const OcPairSampler sampler(A, strategy);
  EquivalenceResiduals worst;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [h, g] = sampler.sample(derive_seed(seed, k));
    const EquivalenceResiduals e = equivalence_residuals(A, h, g);
    worst.a = std::max(worst.a, e.a);
    worst.b = std::max(worst.b, e.b);
    worst.c = std::max(worst.c, e.c);
    worst.d = std::max(worst.d, e.d);
    r.observe(e.max(), kEquivTol, describe_trial(A, k));
  }
  r.metric("exp_commute", worst.a);
  r.metric("u_identity", worst.b);
  r.metric("u_v_vstar", worst.c);
  r.metric("generators_commute", worst.d);
  return r;
}

CheckReport oc_equivalences_detection_check(const Algebra& A, std::size_t trials, std::uint64_t seed) {
  CheckReport r("oc-equivalences-detection");
  double least = INFINITY;
  std::size_t u_identity_hits = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [h, g] = random_noncommuting_pair(A, derive_seed(seed, k));
    const EquivalenceResiduals e = equivalence_residuals(A, h, g);
    least = std::min(least, e.max());
    if (e.b >= 10 * kEquivTol) ++u_identity_hits;
    // Passing here means the violation was large enough to be seen.
    r.observe(10 * kEquivTol / std::max(e.max(), 1e-300), 1.0, describe_trial(A, k));
  }
  r.metric("min_violation", least);
  r.metric("u_identity_violations", static_cast<double>(u_identity_hits));
  return r;
}

CheckReport circle_inequality_check(const Algebra& A, std::size_t trials, std::uint64_t seed) {
  CheckReport r("circle-inequality");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double min_slack = INFINITY;
  for (std::size_t k = 0; k < trials; ++k) {
    Element u;
    if (k == 0) {
      u = A.unit();
    } else if (k % 10 == 1) {
      u = A.unit() * std::polar(1.0, 2.0 * unif(rng) - 1.0);
    } else {
      const Element h = random_element(A, derive_seed(seed, k), Flavor::SelfAdjoint);
      const double nh = A.norm(h);
      const double target = 1.5 * unif(rng) * unif(rng);
      u = exp_i(A, h, nh > 0 ? target / nh : 0.0);
    }
    const double d = A.distance(u, A.unit());
    int n = 1;
    if (d > 0) {
      const int nmax = std::min(1000, static_cast<int>(std::ceil(2.0 / d)) - 1);
      if (nmax >= 1) n = 1 + static_cast<int>(unif(rng) * nmax) % nmax;
      while (n > 1 && n * d >= 2.0) --n;
      if (n * d >= 2.0) continue;
    }
    const double rhs = std::numbers::pi / 2 * A.distance(unitary_power(A, u, n), A.unit());
    const double excess = n * d - rhs;
    min_slack = std::min(min_slack, -excess);
    std::ostringstream w;
    w << describe_trial(A, k) << " n=" << n << " ‖u−1‖=" << d;
    r.observe(std::max(excess, 0.0), 1e-9, w.str());
  }
  r.metric("min_slack", min_slack);
  return r;
}

CheckReport symmetric_difference_check(const Algebra& A, OcStrategy strategy, std::size_t trials,
                                       std::uint64_t seed) {
  CheckReport r("symmetric-difference");
  const OcPairSampler sampler(A, strategy);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [a, b] = sampler.sample(derive_seed(seed, k));
    const Element p = random_spectral_projection(A, a, derive_seed(seed, 2 * k + 1));
    const Element q = random_spectral_projection(A, b, derive_seed(seed, 2 * k + 2));
    const Element d = symmetric_difference(A, p, q);
    const Element one = A.unit();
    const double ups = A.distance(one - 2.0 * d, A.product(one - 2.0 * p, one - 2.0 * q));
    r.observe(std::max(projection_residual(A, d), ups), 1e-8, describe_trial(A, k));
  }
  return r;
}

}  // namespace jbstar
