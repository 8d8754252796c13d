#include "jbstar/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"
#include "jbstar/sampling.hpp"

namespace jbstar {

namespace {

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> sub(std::vector<double> a, const std::vector<double>& b, double s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= s * b[i];
  return a;
}

double real_inner(const Element& x, const Element& y) { return inner(x.coords(), y.coords()).real(); }

std::string text(const std::string& what, double value) {
  std::ostringstream os;
  os << what << " " << value;
  return os.str();
}

std::vector<double> checked(const SaFunction& f, const Element& a, std::size_t d) {
  std::vector<double> v = f(a);
  if (v.size() != d) throw Error(ErrorKind::PreconditionFailed, "f changed its target dimension");
  return v;
}

// Finite-additivity, homogeneity and commuting-additivity probes shared by
// measure_from_map and the theorem check. Returns the first failure, if any.
struct HypothesisResult {
  double homogeneity = 0.0;
  double oc_additivity = 0.0;
  double orthogonal_additivity = 0.0;
  std::string homogeneity_witness;
  std::string additivity_witness;

  bool ok() const { return homogeneity_witness.empty() && additivity_witness.empty(); }
  const std::string& witness() const { return additivity_witness.empty() ? homogeneity_witness : additivity_witness; }
};

HypothesisResult probe_hypotheses(const Algebra& A, const SaFunction& f, std::size_t d, std::size_t trials,
                                  std::uint64_t seed) {
  HypothesisResult h;
  const OcPairSampler sampler(A, OcStrategy::SameGenerator);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(-2.0, 2.0);
  for (std::size_t k = 0; k < trials; ++k) {
    const auto [a, b] = sampler.sample(derive_seed(seed, k));
    const auto fa = checked(f, a, d), fb = checked(f, b, d);
    const double s = r(rng);
    const double hom = max_norm(sub(checked(f, a * s, d), fa, s)) / (1.0 + std::abs(s) * A.norm(a));
    const double add = max_norm(sub(sub(checked(f, a + b, d), fa), fb)) / (1.0 + A.norm(a) + A.norm(b));

    const auto sd = spectral_decomposition(A, a);
    double orth = 0.0;
    if (sd.pairs.size() >= 2) {
      Element p = A.zero(), q = A.zero();
      for (std::size_t j = 0; j < sd.pairs.size(); ++j) (j % 2 ? q : p) += sd.pairs[j].second;
      p = self_adjoint_part(A, p);
      q = self_adjoint_part(A, q);
      orth = max_norm(sub(sub(checked(f, p + q, d), checked(f, p, d)), checked(f, q, d)));
    }
    h.homogeneity = std::max(h.homogeneity, hom);
    h.oc_additivity = std::max(h.oc_additivity, add);
    h.orthogonal_additivity = std::max(h.orthogonal_additivity, orth);
    if (h.homogeneity_witness.empty() && hom > 1e-8)
      h.homogeneity_witness = text("f(sa) ≠ s·f(a) at trial " + std::to_string(k) + ", residual", hom);
    if (h.additivity_witness.empty() && (add > 1e-8 || orth > 1e-8))
      h.additivity_witness = add > 1e-8 ? text("f(a+b) ≠ f(a)+f(b) for commuting a, b at trial " + std::to_string(k) + ", residual", add)
                             : text("μ(p+q) ≠ μ(p)+μ(q) for orthogonal p, q at trial " + std::to_string(k) + ", residual", orth);
  }
  return h;
}

// Matrix-unit projections E_ii, (E_ii+E_jj±E_ij±E_ji)/2 and the complex pair.
std::vector<Element> canonical_projections(const Algebra& A) {
  std::vector<Element> out;
  if (A.kind() != AlgebraKind::HermitianMatrix) return out;
  const std::size_t n = A.order();
  auto at = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> c(n * n);
    c[at(i, i)] = 1.0;
    out.push_back(A.element(c));
    for (std::size_t j = i + 1; j < n; ++j)
      for (Complex z : {Complex(1, 0), Complex(0, 1)}) {
        std::vector<Complex> e(n * n);
        e[at(i, i)] = e[at(j, j)] = 0.5;
        e[at(i, j)] = 0.5 * z;
        e[at(j, i)] = 0.5 * std::conj(z);
        out.push_back(A.element(e));
      }
  }
  return out;
}

}  // namespace

SaFunction as_sa_function(const MapUnderTest& m) {
  return [m](const Element& a) {
    const Element y = m(a);
    std::vector<double> v;
    v.reserve(2 * y.size());
    for (const auto& c : y.coords()) {
      v.push_back(c.real());
      v.push_back(c.imag());
    }
    return v;
  };
}

std::vector<Element> self_adjoint_basis(const Algebra& A) {
  std::vector<Element> out;
  for (std::size_t k = 0; k < A.dim(); ++k) {
    for (Complex s : {Complex(1, 0), Complex(0, 1)}) {
      Element v = self_adjoint_part(A, A.basis(k) * s);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : out) v -= b * real_inner(b, v);
      const double nv = std::sqrt(real_inner(v, v));
      if (nv > 1e-10) out.push_back(v * (1.0 / nv));
    }
  }
  return out;
}

std::vector<double> self_adjoint_coords(const std::vector<Element>& basis, const Element& a) {
  std::vector<double> c(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) c[j] = real_inner(basis[j], a);
  return c;
}

ProjectionMeasure measure_from_map(const Algebra& A, const SaFunction& f, std::size_t bound_probe,
                                   std::uint64_t seed) {
  const std::size_t d = f(A.zero()).size();
  const HypothesisResult h = probe_hypotheses(A, f, d, std::max<std::size_t>(bound_probe, 1), seed);
  if (!h.additivity_witness.empty()) throw Error(ErrorKind::AdditivityViolation, h.additivity_witness);
  ProjectionMeasure mu{A, f, d, 0.0};
  for (std::size_t k = 0; k < bound_probe; ++k) {
    const Element p = random_element(A, derive_seed(seed ^ 0xb0, k), Flavor::Projection);
    mu.bound = std::max(mu.bound, max_norm(checked(f, p, d)));
  }
  mu.bound = std::max(mu.bound, max_norm(checked(f, A.unit(), d)));
  return mu;
}

std::vector<double> LinearReconstruction::apply(const Element& a) const {
  const auto c = self_adjoint_coords(basis, a);
  std::vector<double> out(t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) out[i] += t(i, j).real() * c[j];
  return out;
}

LinearReconstruction linear_reconstruction(const ProjectionMeasure& mu, std::size_t probes, std::uint64_t seed) {
  const Algebra& A = mu.algebra;
  LinearReconstruction rec;
  rec.basis = self_adjoint_basis(A);
  const std::size_t m = rec.basis.size();
  std::vector<Element> ps = canonical_projections(A);
  ps.push_back(A.unit());
  for (std::size_t k = 0; ps.size() < std::max(probes, 2 * m); ++k) {
    const Element a = random_element(A, derive_seed(seed, k), Flavor::SelfAdjoint);
    ps.push_back(random_spectral_projection(A, a, derive_seed(seed ^ 0x5ec, k)));
  }
  ComplexMatrix x(ps.size(), m), y(ps.size(), mu.target_dim);
  std::vector<std::vector<double>> values;
  for (std::size_t r = 0; r < ps.size(); ++r) {
    const auto c = self_adjoint_coords(rec.basis, ps[r]);
    for (std::size_t j = 0; j < m; ++j) x(r, j) = c[j];
    values.push_back(checked(mu.eval, ps[r], mu.target_dim));
    for (std::size_t j = 0; j < mu.target_dim; ++j) y(r, j) = values.back()[j];
  }
  if (column_space(x, 1e-10).cols() < m)
    throw Error(ErrorKind::ProjectionsDoNotSpan, "sampled projections do not span the self-adjoint part");
  const LeastSquares ls = solve_least_squares(x, y, A.tol());
  rec.t = ls.solution.transpose();
  rec.probes = ps.size();
  for (std::size_t r = 0; r < ps.size(); ++r)
    rec.misfit = std::max(rec.misfit, max_norm(sub(rec.apply(ps[r]), values[r])));
  return rec;
}

CheckReport verify_linearity_theorem(const Algebra& A, const SaFunction& f, std::size_t trials,
                                     std::uint64_t seed, const LinearityOptions& options) {
  const bool theorem = options.mode == LinearityMode::TheoremGrade;
  CheckReport r(theorem ? "linearity-theorem" : "linearity-exploratory");
  const auto summands = classify_summands(A);
  const auto spin = std::count_if(summands.begin(), summands.end(), [](const SummandType& s) { return s.spin_like; });
  if (spin > 0) {
    std::ostringstream os;
    os << A.describe() << " has " << spin << " spin-like summand(s) out of " << summands.size();
    const bool mixed = static_cast<std::size_t>(spin) < summands.size();
    if (theorem && (!mixed || options.mixed_policy == MixedI2Policy::Refuse))
      throw Error(ErrorKind::TypeI2Present, os.str());
    r.note("warning: " + os.str());
  }
  r.metric("spin_like_summands", static_cast<double>(spin));

  const std::size_t d = f(A.zero()).size();
  const HypothesisResult h = probe_hypotheses(A, f, d, trials, seed);
  r.metric("homogeneity", h.homogeneity);
  r.metric("oc_additivity", h.oc_additivity);
  r.metric("orthogonal_additivity", h.orthogonal_additivity);
  if (!h.ok()) {
    if (theorem) throw Error(ErrorKind::HypothesisFailed, h.witness());
    r.note("hypothesis violated: " + h.witness());
  }

  double bound = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const Element a = random_element(A, derive_seed(seed ^ 0xba11, k), Flavor::SelfAdjoint);
    const double na = A.norm(a);
    if (na > 0) bound = std::max(bound, max_norm(checked(f, a * (1.0 / na), d)));
  }
  r.metric("bound", bound);

  const ProjectionMeasure mu{A, f, d, bound};
  const std::size_t probes = options.probes ? options.probes : std::max<std::size_t>(64, 8 * self_adjoint_basis(A).size());
  const LinearReconstruction rec = linear_reconstruction(mu, probes, seed ^ 0x7ec);
  r.metric("reconstruction_misfit", rec.misfit);
  r.observe(rec.misfit, options.threshold * (1.0 + mu.bound), "reconstruction misfit");

  double spectral = 0.0, agreement = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const Element a = random_element(A, derive_seed(seed ^ 0x5a, k), Flavor::SelfAdjoint);
    const auto fa = checked(f, a, d);
    std::vector<double> sum(d);
    for (const auto& [alpha, p] : spectral_decomposition(A, a).pairs) {
      const auto fp = checked(f, self_adjoint_part(A, p), d);
      for (std::size_t i = 0; i < d; ++i) sum[i] += alpha * fp[i];
    }
    const double scale = 1.0 + A.norm(a) * (1.0 + bound);
    const double s = max_norm(sub(fa, sum)) / scale;
    const double g = max_norm(sub(fa, rec.apply(a))) / scale;
    spectral = std::max(spectral, s);
    agreement = std::max(agreement, g);
    std::ostringstream w;
    w << "trial " << k << ": spectral identity " << s << ", f − T " << g;
    r.observe(std::max(s, g), options.threshold, w.str());
  }
  r.metric("spectral_identity", spectral);
  r.metric("agreement", agreement);
  if (!h.ok()) r.fail(h.witness());
  return r;
}

}  // namespace jbstar
