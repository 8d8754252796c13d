#include "jbstar/preserver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"
#include "jbstar/peirce.hpp"
#include "jbstar/unitary.hpp"

namespace jbstar {

namespace {

std::string trial_text(const MapUnderTest& m, std::size_t k, const std::string& what = {}) {
  std::ostringstream os;
  os << m.label << " on " << m.source.describe() << " trial " << k;
  if (!what.empty()) os << ": " << what;
  return os.str();
}

std::pair<Element, Element> checked_pair(const OcPairSampler& sampler, std::uint64_t seed) {
  auto pair = sampler.sample(seed);
  const Commutation c = operator_commutes(sampler.algebra(), pair.first, pair.second);
  if (!c.commute) {
    std::ostringstream os;
    os << to_string(sampler.strategy()) << " sampler produced a pair with commutator " << c.residual;
    throw Error(ErrorKind::SamplerViolation, os.str());
  }
  return pair;
}

double max_abs_real(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return u(rng);
}

}  // namespace

CheckReport check_oc_additive(const MapUnderTest& m, OcStrategy strategy, std::size_t trials,
                              std::uint64_t seed, double factor) {
  CheckReport r("oc-additive");
  const OcPairSampler sampler(m.source, strategy);
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [a, b] = checked_pair(sampler, derive_seed(seed, k));
    const double res = B.distance(m(a + b), m(a) + m(b));
    r.observe(res, factor * (1.0 + A.norm(a) + A.norm(b)), trial_text(m, k));
  }
  return r;
}

CheckReport check_oc_quadratic(const MapUnderTest& m, OcStrategy strategy, std::size_t trials,
                               std::uint64_t seed, double factor) {
  CheckReport r("oc-quadratic");
  const OcPairSampler sampler(m.source, strategy);
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [a, b] = checked_pair(sampler, derive_seed(seed, k));
    const double res = B.distance(m(u_operator(A, a, b)), u_operator(B, m(a), m(b)));
    const double sa = one_plus_norm(A, a);
    r.observe(res, factor * sa * sa * one_plus_norm(A, b), trial_text(m, k));
  }
  return r;
}

CheckReport check_piecewise_hom_on_unitaries(const MapUnderTest& m, OcStrategy strategy,
                                             std::size_t trials, std::uint64_t seed) {
  CheckReport r("piecewise-hom-unitaries");
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  auto image = [&](const Element& u) {
    Element y = m(u);
    const UnitaryCheck uc = is_unitary(B, y);
    if (!uc) {
      std::ostringstream os;
      os << m.label << ": image of a unitary has unitarity residual " << uc.residual;
      throw Error(ErrorKind::NonUnitaryImage, os.str());
    }
    return y;
  };
  const double unital = B.distance(image(A.unit()), B.unit());
  r.metric("unitality", unital);
  r.observe(unital, 1e-8, m.label + ": Φ(1) ≠ 1");
  const OcPairSampler sampler(A, strategy);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [h, g] = checked_pair(sampler, derive_seed(seed, k));
    const Element u = exp_i(A, h, 1.0);
    const Element v = exp_i(A, g, 1.0);
    const Element pu = image(u), pv = image(v);
    const double hom = B.distance(m(A.product(u, v)), B.product(pu, pv));
    const double oc = operator_commutes(B, pu, pv).residual / 4.0;
    r.observe(std::max(hom, oc), 1e-8, trial_text(m, k));
  }
  return r;
}

CheckReport check_hom_on_noncommuting_unitaries(const MapUnderTest& m, std::size_t trials,
                                                std::uint64_t seed) {
  CheckReport r("hom-noncommuting-unitaries", true);
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  double worst = 0.0;
  std::string witness;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [h, g] = random_noncommuting_pair(A, derive_seed(seed, k));
    const Element u = exp_i(A, h, 2.0);
    const Element v = exp_i(A, g, 2.0);
    const double res = B.distance(m(A.product(u, v)), B.product(m(u), m(v)));
    if (res > worst) {
      worst = res;
      witness = trial_text(m, k, "Φ(u∘v) ≠ Φ(u)∘Φ(v)");
    }
  }
  r.observe(worst, 1e-8, witness);
  r.trials = trials;
  return r;
}

Element derive_generator_map(const MapUnderTest& m, const Element& a, double t_small) {
  if (!(t_small > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "t_small must be positive");
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  auto at = [&](double t) {
    const Element y = m(exp_i(A, a, t));
    const UnitaryLog l = unitary_log(B, y);
    if (l.branch_ambiguous)
      throw Error(ErrorKind::BranchAmbiguity, m.label + ": image has an eigenvalue at −1; shrink t");
    return l.h * (1.0 / t);
  };
  const Element f = at(t_small);
  const Element half = at(t_small / 2);
  const double gap = B.distance(f, half);
  if (gap > 1e-6 * one_plus_norm(B, f)) {
    std::ostringstream os;
    os << m.label << ": generator differs between t and t/2 by " << gap;
    throw Error(ErrorKind::Inconsistent, os.str());
  }
  return f;
}

namespace {

double generator_step(const Algebra& A, const Element& x) { return 0.25 / one_plus_norm(A, x); }

}  // namespace

CheckReport check_generator_properties(const MapUnderTest& m, OcStrategy strategy, std::size_t trials,
                                       std::uint64_t seed) {
  CheckReport r("generator-properties");
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  const OcPairSampler sampler(A, strategy);
  std::mt19937_64 rng(seed);
  double bound = 0.0;
  auto f = [&](const Element& x) { return derive_generator_map(m, x, generator_step(A, x)); };
  for (std::size_t k = 0; k < trials; ++k) {
    try {
      const auto [a, b] = checked_pair(sampler, derive_seed(seed, k));
      const Element fa = f(a), fb = f(b);
      bound = std::max(bound, B.norm(fa) / std::max(A.norm(a), 1e-300));
      const double rr = max_abs_real(rng);
      const double hom = B.distance(f(a * rr), fa * rr) / (1.0 + std::abs(rr) * A.norm(a));
      const double add = B.distance(f(a + b), fa + fb) / (1.0 + A.norm(a) + A.norm(b));
      const double oc = operator_commutes(B, fa, fb).residual / (one_plus_norm(B, fa) * one_plus_norm(B, fb));
      std::ostringstream w;
      w << "homogeneity " << hom << ", additivity " << add << ", commutativity " << oc;
      r.observe(std::max({hom, add, oc}), 1e-6, trial_text(m, k, w.str()));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SamplerViolation) throw;
      r.fail(trial_text(m, k, e.what()));
    }
  }
  r.metric("bound", bound);
  return r;
}

void verify_jordan_star_isomorphism(const MapUnderTest& theta, std::size_t samples, std::uint64_t seed) {
  const Algebra& A = theta.source;
  const Algebra& B = theta.target;
  if (!theta.has_inverse()) throw Error(ErrorKind::PreconditionFailed, theta.label + ": no inverse supplied");
  auto fail = [&](const char* what, double res) {
    std::ostringstream os;
    os << theta.label << " is not a Jordan *-isomorphism: " << what << " residual " << res;
    throw Error(ErrorKind::PreconditionFailed, os.str());
  };
  const double unital = B.distance(theta(A.unit()), B.unit());
  if (unital > 1e-8) fail("unitality", unital);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const Element x = random_element(A, derive_seed(seed, 2 * k), Flavor::General);
    const Element y = random_element(A, derive_seed(seed, 2 * k + 1), Flavor::General);
    const double scale = one_plus_norm(A, x) * one_plus_norm(A, y);
    const Complex al(g(rng), g(rng)), be(g(rng), g(rng));
    const Element tx = theta(x), ty = theta(y);
    const double lin = B.distance(theta(x * al + y * be), tx * al + ty * be);
    if (lin > 1e-8 * scale * (1 + std::abs(al) + std::abs(be))) fail("linearity", lin);
    const double mult = B.distance(theta(A.product(x, y)), B.product(tx, ty));
    if (mult > 1e-8 * scale) fail("multiplicativity", mult);
    const double star = B.distance(theta(A.involution(x)), B.involution(tx));
    if (star > 1e-8 * scale) fail("involution", star);
    const double round = A.distance(theta.invert(tx), x);
    if (round > 1e-8 * scale) fail("inverse round trip", round);
  }
}

CheckReport verify_unitary_preserver_form(const MapUnderTest& m, const MapUnderTest& theta,
                                          const ElementMap& beta, const Element& c, std::size_t trials,
                                          std::uint64_t seed) {
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  if (!(theta.source == A) || !(theta.target == B))
    throw Error(ErrorKind::PreconditionFailed, "theta and the map act between different algebras");
  verify_jordan_star_isomorphism(theta, 10, seed ^ 0x7e7a);
  const auto centre = center_basis(B);
  if (!is_self_adjoint(B, c) || center_residual(B, centre, c) > 1e-8 * one_plus_norm(B, c))
    throw Error(ErrorKind::PreconditionFailed, "c is not a central self-adjoint element");
  if (!is_invertible(B, c)) throw Error(ErrorKind::PreconditionFailed, "c is not invertible");
  const Element theta_inv_c = theta.invert(c);

  CheckReport r("unitary-preserver-form");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  double path_gap = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    Element a = random_element(A, derive_seed(seed, k), Flavor::SelfAdjoint);
    const double na = A.norm(a);
    if (na > 0) a = a * (radius(rng) / na);
    const Element ba = beta(a);
    B.check(ba);
    if (!is_self_adjoint(B, ba) || center_residual(B, centre, ba) > 1e-8 * one_plus_norm(B, ba))
      throw Error(ErrorKind::PreconditionFailed, "beta(a) is not central self-adjoint");
    const Element eb = exp_i(B, self_adjoint_part(B, ba), 1.0);
    const Element lhs = m(exp_i(A, a, 1.0));
    const Element first = B.product(eb, exp_i(B, self_adjoint_part(B, B.product(c, theta(a))), 1.0));
    const Element second =
        B.product(eb, theta(exp_i(A, self_adjoint_part(A, A.product(theta_inv_c, a)), 1.0)));
    path_gap = std::max(path_gap, B.distance(first, second));
    const double res = std::max(B.distance(lhs, first), B.distance(lhs, second));
    r.observe(res, 1e-8 * one_plus_norm(A, a), trial_text(m, k));
  }
  r.metric("formula_paths_gap", path_gap);
  return r;
}

std::string_view to_string(Dichotomy d) noexcept {
  switch (d) {
    case Dichotomy::IdentityCase: return "identity_case";
    case Dichotomy::InverseCase: return "inverse_case";
    case Dichotomy::Neither: return "neither";
  }
  return "?";
}

DichotomyResult classify_factor_dichotomy(const MapUnderTest& m, const MapUnderTest& theta,
                                          std::size_t trials, std::uint64_t seed) {
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  if (!is_factor(A)) throw Error(ErrorKind::NotAFactor, A.describe() + " has a nontrivial centre");
  if (has_type_i2_summand(A)) throw Error(ErrorKind::NotAFactor, A.describe() + " is a spin factor");
  DichotomyResult out;
  double worst = -1.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const Element u = random_element(A, derive_seed(seed, k), Flavor::Unitary);
    const Element pu = m(u);
    const double r1 = B.distance(pu, theta(u));
    const double r2 = B.distance(pu, theta(A.involution(u)));
    out.identity_residual = std::max(out.identity_residual, r1);
    out.inverse_residual = std::max(out.inverse_residual, r2);
    if (std::min(r1, r2) > worst) {
      worst = std::min(r1, r2);
      out.witness = trial_text(m, k);
    }
  }
  const double thr = 1e-8;
  if (out.identity_residual <= thr) out.verdict = Dichotomy::IdentityCase;
  else if (out.inverse_residual <= thr) out.verdict = Dichotomy::InverseCase;
  if (out.verdict != Dichotomy::Neither) out.witness.reset();
  return out;
}

StructureRecovery recover_structure(const MapUnderTest& m, std::size_t trials, std::uint64_t seed,
                                    const RecoveryOptions& options) {
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  for (const auto& hyp : {check_oc_additive(m, options.strategy, options.hypothesis_trials, seed),
                          check_oc_quadratic(m, options.strategy, options.hypothesis_trials, seed + 1)})
    if (!hyp.passed) {
      std::ostringstream os;
      os << hyp.name << " fails with residual " << hyp.max_residual;
      throw Error(ErrorKind::HypothesisFailed, os.str());
    }
  StructureRecovery s;
  s.w = m(A.unit());
  if (!is_tripotent(B, s.w) || !is_self_adjoint(B, s.w))
    throw Error(ErrorKind::HypothesisFailed, "Φ(1) is not a self-adjoint tripotent");
  s.peirce2 = peirce2_algebra(B, s.w);
  const PeirceSystem ps = peirce_system(B, s.w);
  auto jw = [&](const Element& x, const Element& y) { return triple_product(B, x, s.w, y); };

  const OcPairSampler sampler(A, options.strategy);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [a, b] = checked_pair(sampler, derive_seed(seed, 2 * k));
    const double sab = one_plus_norm(A, a) * one_plus_norm(A, b);
    s.hom_residual = std::max(s.hom_residual, B.distance(m(A.product(a, b)), jw(m(a), m(b))) / sab);

    const Element x = random_element(A, derive_seed(seed, 2 * k + 1), Flavor::SelfAdjoint);
    const double sax = one_plus_norm(A, a) * one_plus_norm(A, x);
    const Element fa = m(a), fx = m(x);
    s.general_hom_residual = std::max(s.general_hom_residual, B.distance(m(A.product(a, x)), jw(fa, fx)) / sax);
    const double p = max_abs_real(rng), q = max_abs_real(rng);
    const double lin = B.distance(m(a * p + x * q), fa * p + fx * q) /
                       (1.0 + std::abs(p) * A.norm(a) + std::abs(q) * A.norm(x));
    s.linearity_residual = std::max(s.linearity_residual, lin);
    const auto proj = ps.p2.apply(fx.coords());
    s.carrier_residual = std::max(s.carrier_residual, B.distance(B.element(proj), fx) / one_plus_norm(B, fx));
  }

  if (m.has_inverse()) {
    double round = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(trials, 50); ++k) {
      const Element a = random_element(A, derive_seed(seed ^ 0xb1, k), Flavor::SelfAdjoint);
      const Element y = m(random_element(A, derive_seed(seed ^ 0xb2, k), Flavor::SelfAdjoint));
      round = std::max({round, A.distance(m.invert(m(a)), a) / one_plus_norm(A, a),
                        B.distance(m(m.invert(y)), y) / one_plus_norm(B, y)});
    }
    s.bijective = round <= 1e-8;
    if (*s.bijective) {
      const auto centre = center_basis(B);
      s.w_central_symmetry =
          is_symmetry(B, s.w) && center_residual(B, centre, s.w) <= 1e-8 * one_plus_norm(B, s.w);
    }
  }
  if (options.check_isometry) {
    double iso = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(trials, 50); ++k) {
      const Element a = random_element(A, derive_seed(seed ^ 0x150, k), Flavor::SelfAdjoint);
      iso = std::max(iso, std::abs(B.norm(m(a)) - A.norm(a)) / one_plus_norm(A, a));
    }
    s.isometry_residual = iso;
  }
  return s;
}

CheckReport structure_recovery_report(const StructureRecovery& s, double threshold, bool gate_isometry) {
  CheckReport r("structure-recovery");
  r.observe(s.hom_residual, threshold, "Φ(a∘b) ≠ Φ(a)∘_w Φ(b) on an operator-commuting pair");
  r.observe(s.general_hom_residual, threshold, "Φ(a∘b) ≠ Φ(a)∘_w Φ(b)");
  r.observe(s.linearity_residual, threshold, "Φ is not real linear");
  r.observe(s.carrier_residual, threshold, "image leaves the Peirce-2 space");
  r.metric("hom_residual", s.hom_residual);
  r.metric("general_hom_residual", s.general_hom_residual);
  r.metric("linearity_residual", s.linearity_residual);
  r.metric("carrier_residual", s.carrier_residual);
  r.metric("peirce2_dim", static_cast<double>(s.peirce2.dim()));
  if (s.bijective) r.metric("bijective", *s.bijective ? 1.0 : 0.0);
  if (s.w_central_symmetry) {
    r.metric("w_central_symmetry", *s.w_central_symmetry ? 1.0 : 0.0);
    if (!*s.w_central_symmetry) r.fail("bijective map with Φ(1) not a central symmetry");
  }
  if (s.isometry_residual) {
    r.metric("isometry_residual", *s.isometry_residual);
    if (gate_isometry) r.observe(*s.isometry_residual, threshold, "Φ is not isometric on samples");
  }
  r.trials = 1;
  return r;
}

CheckReport check_central_preservation(const MapUnderTest& m, std::size_t trials, std::uint64_t seed) {
  if (!m.has_inverse()) throw Error(ErrorKind::PreconditionFailed, m.label + ": no inverse supplied");
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  CheckReport r("central-preservation");
  const auto zA = center_basis(A);
  const auto zB = center_basis(B);
  auto central_unitary_defect = [](const Algebra& X, const std::vector<Element>& z, const Element& u) {
    return std::max(is_unitary(X, u).residual, center_residual(X, z, u) / one_plus_norm(X, u));
  };
  auto symmetry_defect = [](const Algebra& X, const Element& s) {
    return std::max(self_adjoint_residual(X, s), X.distance(X.product(s, s), X.unit()));
  };
  auto central_sa = [](const Algebra& X, const std::vector<Element>& z, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Element h = X.zero();
    for (const auto& c : z) h += self_adjoint_part(X, c * Complex(g(rng), g(rng)));
    return h;
  };
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    const Element zu = exp_i(A, central_sa(A, zA, rng), 1.0);
    const Element zv = exp_i(B, central_sa(B, zB, rng), 1.0);
    const double cen = std::max(central_unitary_defect(B, zB, m(zu)), central_unitary_defect(A, zA, m.invert(zv)));

    const Element p = random_element(A, derive_seed(seed, 3 * k), Flavor::Projection);
    const Element sB = B.unit() - 2.0 * random_element(B, derive_seed(seed, 3 * k + 1), Flavor::Projection);
    const double sym = std::max(symmetry_defect(B, m(A.unit() - 2.0 * p)), symmetry_defect(A, m.invert(sB)));

    const OcPairSampler sampler(A, OcStrategy::SameGenerator);
    const auto [a, b] = sampler.sample(derive_seed(seed, 3 * k + 2));
    const Element pa = random_spectral_projection(A, a, derive_seed(seed ^ 0x51, k));
    const Element pb = random_spectral_projection(A, b, derive_seed(seed ^ 0x52, k));
    auto psi = [&](const Element& q) { return (B.unit() - m(A.unit() - 2.0 * q)) * 0.5; };
    const Element qa = psi(pa), qb = psi(pb);
    const double oc = operator_commutes(B, qa, qb).residual / (one_plus_norm(B, qa) * one_plus_norm(B, qb));

    std::ostringstream w;
    w << "centre " << cen << ", symmetries " << sym << ", Ψ commutativity " << oc;
    r.observe(std::max({cen, sym, oc}), 1e-8, trial_text(m, k, w.str()));
  }
  return r;
}

CheckReport check_phi_i1(const MapUnderTest& m) {
  CheckReport r("phi-i1");
  const Algebra& A = m.source;
  const Algebra& B = m.target;
  const Element w = m(A.unit());
  const Element x = m(A.unit() * Complex(0.0, 1.0));
  const Algebra P = peirce2_algebra(B, w);
  const Element z = P.restrict((w - x * Complex(0.0, 1.0)) * 0.5);
  const double in_space = B.distance(P.embed(z), (w - x * Complex(0.0, 1.0)) * 0.5);
  const double proj = projection_residual(P, z);
  const double central = center_residual(P, center_basis(P), z);
  r.observe(std::max({in_space, proj, central}), 1e-8, m.label + ": (w − iΦ(i1))/2 is not a central projection");
  r.metric("z_norm", P.norm(z));
  return r;
}

}  // namespace jbstar
