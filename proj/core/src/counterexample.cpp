#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"
#include "jbstar/preserver.hpp"

namespace jbstar {

namespace {

// Self-adjoint spin elements are λ1 + i·t with λ and t real.
struct SpinSa {
  double lambda;
  std::vector<double> t;
};

SpinSa split(const Algebra& S, const Element& x) {
  if (self_adjoint_residual(S, x) > 1e-8 * one_plus_norm(S, x))
    throw Error(ErrorKind::NotSelfAdjoint, "spin counterexample is defined on self-adjoint elements");
  SpinSa out{x[0].real(), std::vector<double>(x.size() - 1)};
  for (std::size_t i = 1; i < x.size(); ++i) out.t[i - 1] = x[i].imag();
  return out;
}

Element join(const Algebra& S, const SpinSa& v) {
  std::vector<Complex> c(S.dim());
  c[0] = v.lambda;
  for (std::size_t i = 0; i < v.t.size(); ++i) c[i + 1] = Complex(0.0, v.t[i]);
  return S.element(std::move(c));
}

double warp(double phi, double eps) { return phi + eps * std::sin(2 * phi); }

// Solves ψ = φ + ε sin 2φ; the map φ ↦ ψ − ε sin 2φ contracts with rate 2ε.
double unwarp(double psi, double eps) {
  double phi = psi;
  for (int it = 0; it < 500; ++it) {
    const double next = psi - eps * std::sin(2 * phi);
    if (std::abs(next - phi) < 1e-16) return next;
    phi = next;
  }
  return phi;
}

Element apply_warp(const Algebra& S, const Element& x, double eps, bool inverse) {
  SpinSa v = split(S, x);
  const double r = std::hypot(v.t[0], v.t[1]);
  if (r > 0) {
    const double phi = std::atan2(v.t[1], v.t[0]);
    const double out = inverse ? unwarp(phi, eps) : warp(phi, eps);
    v.t[0] = r * std::cos(out);
    v.t[1] = r * std::sin(out);
  }
  return join(S, v);
}

double h_norm_sq(const Algebra& S, const Element& h) {
  const SpinSa v = split(S, h);
  double s = 0.0;
  for (double x : v.t) s += x * x;
  return s;
}

}  // namespace

SpinCounterexample build_spin_counterexample(std::size_t n, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw Error(ErrorKind::ParamOutOfRange, "epsilon must lie in (0, 0.5)");
  const Algebra S = build_spin_factor(n);
  SpinCounterexample cx;
  cx.algebra = S;
  cx.epsilon = epsilon;
  cx.seed = seed;
  std::ostringstream label;
  label << "spin_counterexample(eps=" << epsilon << ")";
  cx.map = MapUnderTest{S, S, [S, epsilon](const Element& x) { return apply_warp(S, x, epsilon, false); },
                        label.str(), [S, epsilon](const Element& y) { return apply_warp(S, y, epsilon, true); }};
  return cx;
}

Element spin_u_closed_form(const Algebra& S, double alpha, const Element& h, double t, double s) {
  const double n2 = h_norm_sq(S, h);
  return S.unit() * (alpha * alpha * t + s * alpha * alpha * alpha + (3 * alpha * s + t) * n2) +
         h * (2 * alpha * t + 3 * s * alpha * alpha + s * n2);
}

Element spin_u_truncated_form(const Algebra& S, double alpha, const Element& h, double t, double s) {
  const double n2 = h_norm_sq(S, h);
  return S.unit() * (alpha * alpha * t + s * alpha * alpha * alpha + (2 * alpha * s + t) * n2) +
         h * (2 * alpha * t + 3 * s * alpha * alpha);
}

std::vector<CheckReport> verify_counterexample(const SpinCounterexample& cx, std::size_t trials,
                                               std::uint64_t seed) {
  const Algebra& S = cx.algebra;
  const MapUnderTest& m = cx.map;
  std::vector<CheckReport> out;

  // (i) additive on operator-commuting pairs b = t1 + s·a
  out.push_back(check_oc_additive(m, OcStrategy::Spin, trials, seed));
  out.back().name = "counterexample-oc-additive";

  // (ii) quadratic on the same pairs, plus the closed form of U_a(b)
  CheckReport quad = check_oc_quadratic(m, OcStrategy::Spin, trials, seed + 1);
  quad.name = "counterexample-oc-quadratic";
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::normal_distribution<double> g(0.0, 1.0);
  double closed = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const double alpha = g(rng), t = g(rng), s = g(rng);
    SpinSa hv{0.0, std::vector<double>(S.dim() - 1)};
    for (auto& x : hv.t) x = g(rng) / std::sqrt(static_cast<double>(S.dim()));
    const Element h = join(S, hv);
    const Element a = S.unit() * alpha + h;
    const Element b = S.unit() * t + a * s;
    const double scale = (1 + S.norm(a)) * (1 + S.norm(a)) * (1 + S.norm(b));
    const double res = S.distance(u_operator(S, a, b), spin_u_closed_form(S, alpha, h, t, s));
    closed = std::max(closed, res / scale);
    quad.observe(res, 1e-8 * scale, "closed form of U_a(b) disagrees");
  }
  // Spot value α = 1, t = 0, s = 1, ‖h‖ = 1: b = a and U_a(a) = a³ = 4·1 + 4h.
  {
    SpinSa hv{0.0, std::vector<double>(S.dim() - 1)};
    hv.t[0] = 1.0;
    const Element h = join(S, hv);
    const Element a = S.unit() + h;
    const Element spot = u_operator(S, a, a);
    quad.observe(S.distance(spot, S.unit() * 4.0 + h * 4.0), 1e-12, "U_a(a) ≠ 4·1 + 4h at the spot value");
    quad.observe(S.distance(m(spot), S.unit() * 4.0 + m(h) * 4.0), 1e-12, "Φ(U_a(a)) ≠ 4·1 + 4F(h)");
    quad.metric("truncated_form_residual", S.distance(spot, spin_u_truncated_form(S, 1.0, h, 0.0, 1.0)));
  }
  quad.metric("closed_form_residual", closed);
  out.push_back(std::move(quad));

  // (iii) global additivity fails: the pair (i e₁, i e₂) and random pairs
  CheckReport glob("counterexample-global-additivity", true);
  {
    SpinSa e1{0.0, std::vector<double>(S.dim() - 1)}, e2 = e1;
    e1.t[0] = 1.0;
    e2.t[1] = 1.0;
    const Element x = join(S, e1), y = join(S, e2);
    double best = S.distance(m(x + y), m(x) + m(y));
    std::string witness = "h = i·e₁, k = i·e₂";
    for (std::size_t k = 0; k < trials; ++k) {
      const Element a = random_element(S, derive_seed(seed, 1000 + 2 * k), Flavor::SelfAdjoint);
      const Element b = random_element(S, derive_seed(seed, 1001 + 2 * k), Flavor::SelfAdjoint);
      const double res = S.distance(m(a + b), m(a) + m(b));
      if (res > best) {
        best = res;
        std::ostringstream w;
        w << "random pair " << k;
        witness = w.str();
      }
    }
    glob.observe(best, 0.05, witness);
    glob.trials = trials + 1;
  }
  out.push_back(std::move(glob));

  // (iv) the supplied inverse is a two-sided inverse on samples
  CheckReport bij("counterexample-bijectivity");
  for (std::size_t k = 0; k < trials; ++k) {
    const Element a = random_element(S, derive_seed(seed, 5000 + k), Flavor::SelfAdjoint);
    const double res = std::max(S.distance(m.invert(m(a)), a), S.distance(m(m.invert(a)), a));
    bij.observe(res, 1e-9 * one_plus_norm(S, a), "round trip through the inverse");
  }
  out.push_back(std::move(bij));
  return out;
}

}  // namespace jbstar
