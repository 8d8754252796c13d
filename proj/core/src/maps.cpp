#include <algorithm>
#include <cmath>
#include <numeric>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"
#include "jbstar/preserver.hpp"
#include "jbstar/unitary.hpp"

namespace jbstar {

Element MapUnderTest::operator()(const Element& x) const {
  source.check(x);
  Element y = eval(x);
  target.check(y);
  return y;
}

Element MapUnderTest::invert(const Element& y) const {
  if (!inverse) throw Error(ErrorKind::PreconditionFailed, label + ": no inverse supplied");
  target.check(y);
  Element x = inverse(y);
  source.check(x);
  return x;
}

namespace {

void require_matrix(const Algebra& A, const char* what) {
  if (A.kind() != AlgebraKind::HermitianMatrix)
    throw Error(ErrorKind::PreconditionFailed, std::string(what) + " needs a hermitian matrix algebra");
}

void require_unitary(const Algebra& A, const Element& w, const char* what) {
  if (!is_unitary(A, w)) throw Error(ErrorKind::NotUnitary, std::string(what) + ": w is not unitary");
}

}  // namespace

MapUnderTest identity_map(const Algebra& A) {
  auto id = [](const Element& x) { return x; };
  return {A, A, id, "identity", id};
}

MapUnderTest negation_map(const Algebra& A) {
  auto neg = [](const Element& x) { return -x; };
  return {A, A, neg, "negation", neg};
}

MapUnderTest star_map(const Algebra& A) {
  auto star = [A](const Element& x) { return A.involution(x); };
  return {A, A, star, "star", star};
}

MapUnderTest conjugation_map(const Algebra& A, const Element& w) {
  require_matrix(A, "conjugation_map");
  require_unitary(A, w, "conjugation_map");
  const ComplexMatrix wm = A.to_matrix(w);
  const ComplexMatrix wa = wm.adjoint();
  return {A, A, [A, wm, wa](const Element& x) { return A.from_matrix(wm * A.to_matrix(x) * wa); },
          "conjugation", [A, wm, wa](const Element& y) { return A.from_matrix(wa * A.to_matrix(y) * wm); }};
}

MapUnderTest transpose_map(const Algebra& A) {
  require_matrix(A, "transpose_map");
  auto t = [A](const Element& x) { return A.from_matrix(A.to_matrix(x).transpose()); };
  return {A, A, t, "transpose", t};
}

MapUnderTest u_operator_map(const Algebra& A, const Element& w) {
  require_unitary(A, w, "u_operator_map");
  const Element ws = A.involution(w);
  return {A, A, [A, w](const Element& x) { return u_operator(A, w, x); }, "u_operator",
          [A, ws](const Element& y) { return u_operator(A, ws, y); }};
}

MapUnderTest summand_permutation_map(const Algebra& A, const std::vector<std::size_t>& perm) {
  const auto& parts = A.parts();
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(parts.size());
  std::iota(iota.begin(), iota.end(), std::size_t{0});
  if (sorted != iota) throw Error(ErrorKind::PreconditionFailed, "not a permutation of the summands");
  for (std::size_t k = 0; k < perm.size(); ++k)
    if (parts[k].describe() != parts[perm[k]].describe())
      throw Error(ErrorKind::PreconditionFailed, "permuted summands differ in shape");
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  auto apply = [A](const std::vector<std::size_t>& p) {
    return [A, p](const Element& x) {
      std::vector<Element> comps;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Element c = A.component(x, p[k]);
        comps.push_back(A.parts()[k].element({c.coords().begin(), c.coords().end()}));
      }
      return A.from_components(comps);
    };
  };
  return {A, A, apply(perm), "summand_permutation", apply(inv)};
}

MapUnderTest direct_sum_map(const Algebra& source, const Algebra& target,
                            const std::vector<MapUnderTest>& parts) {
  if (source.parts().size() != parts.size() || target.parts().size() != parts.size())
    throw Error(ErrorKind::PreconditionFailed, "direct_sum_map: part count mismatch");
  for (std::size_t k = 0; k < parts.size(); ++k)
    if (!(parts[k].source == source.parts()[k]) || !(parts[k].target == target.parts()[k]))
      throw Error(ErrorKind::PreconditionFailed, "direct_sum_map: part algebras differ");
  const bool invertible = std::all_of(parts.begin(), parts.end(), [](const MapUnderTest& m) { return m.has_inverse(); });
  std::string label = "direct_sum(";
  for (std::size_t k = 0; k < parts.size(); ++k) label += (k ? "," : "") + parts[k].label;
  label += ")";
  MapUnderTest out{source, target,
                   [source, target, parts](const Element& x) {
                     std::vector<Element> comps;
                     for (std::size_t k = 0; k < parts.size(); ++k) comps.push_back(parts[k](source.component(x, k)));
                     return target.from_components(comps);
                   },
                   label, {}};
  if (invertible)
    out.inverse = [source, target, parts](const Element& y) {
      std::vector<Element> comps;
      for (std::size_t k = 0; k < parts.size(); ++k) comps.push_back(parts[k].invert(target.component(y, k)));
      return source.from_components(comps);
    };
  return out;
}

MapUnderTest square_map(const Algebra& A) {
  return {A, A, [A](const Element& x) { return A.product(x, x); }, "square", {}};
}

MapUnderTest linear_map(const Algebra& source, const Algebra& target, const ComplexMatrix& m,
                        std::string label) {
  if (m.rows() != target.dim() || m.cols() != source.dim())
    throw Error(ErrorKind::PreconditionFailed, "linear_map: matrix shape does not match the algebras");
  return {source, target, [target, m](const Element& x) { return target.element(m.apply(x.coords())); },
          std::move(label), {}};
}

MapUnderTest compose(const MapUnderTest& outer, const MapUnderTest& inner) {
  if (!(outer.source == inner.target))
    throw Error(ErrorKind::AlgebraMismatch, "compose: inner target is not outer source");
  MapUnderTest out{inner.source, outer.target, [outer, inner](const Element& x) { return outer(inner(x)); },
                   outer.label + "∘" + inner.label, {}};
  if (outer.has_inverse() && inner.has_inverse())
    out.inverse = [outer, inner](const Element& y) { return inner.invert(outer.invert(y)); };
  return out;
}

MapUnderTest phase_map(const MapUnderTest& theta, double phi) {
  const Complex z = std::polar(1.0, phi);
  MapUnderTest out{theta.source, theta.target, [theta, z](const Element& x) { return theta(x) * z; },
                   "phase∘" + theta.label, {}};
  if (theta.has_inverse())
    out.inverse = [theta, z](const Element& y) { return theta.invert(y * std::conj(z)); };
  return out;
}

MapUnderTest central_symmetry_twist(const MapUnderTest& theta, const Element& s) {
  const Algebra& B = theta.target;
  if (!is_symmetry(B, s)) throw Error(ErrorKind::PreconditionFailed, "twist: s is not a symmetry");
  if (center_residual(B, center_basis(B), s) > 1e-8 * one_plus_norm(B, s))
    throw Error(ErrorKind::PreconditionFailed, "twist: s is not central");
  MapUnderTest out{theta.source, B, [theta, B, s](const Element& x) { return B.product(theta(x), s); },
                   "twist∘" + theta.label, {}};
  if (theta.has_inverse())
    out.inverse = [theta, B, s](const Element& y) { return theta.invert(B.product(y, s)); };
  return out;
}

MapUnderTest exp_form_map(const MapUnderTest& theta, ElementMap beta, const Element& c) {
  const Algebra A = theta.source;
  const Algebra B = theta.target;
  B.check(c);
  return {A, B,
          [A, B, theta, beta, c](const Element& u) {
            const Element a = unitary_log(A, u).h;
            const Element left = exp_i(B, self_adjoint_part(B, beta(a)), 1.0);
            const Element right = exp_i(B, self_adjoint_part(B, B.product(c, theta(a))), 1.0);
            return B.product(left, right);
          },
          "exp_form(" + theta.label + ")", {}};
}

MapUnderTest generator_warp_map(const Algebra& A, double epsilon) {
  return {A, A,
          [A, epsilon](const Element& u) {
            const Element a = unitary_log(A, u).h;
            const double na = A.norm(a);
            if (na == 0.0) return A.unit();
            return exp_i(A, self_adjoint_part(A, a + A.product(a, a) * (epsilon / na)), 1.0);
          },
          "generator_warp", {}};
}

}  // namespace jbstar
