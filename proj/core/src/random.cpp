#include <cmath>
#include <random>

#include "jbstar/algebra.hpp"
#include "jbstar/calculus.hpp"

namespace jbstar {

namespace {

// Entry scale chosen so that typical elements have norm of order one.
double entry_scale(const Algebra& a) {
  switch (a.kind()) {
    case AlgebraKind::HermitianMatrix: return 1.0 / std::sqrt(static_cast<double>(a.order()));
    case AlgebraKind::Spin: return 1.0 / std::sqrt(static_cast<double>(a.order()));
    default: return 1.0 / std::sqrt(std::sqrt(static_cast<double>(a.dim())));
  }
}

Element gaussian(const Algebra& a, std::mt19937_64& rng) {
  if (a.kind() == AlgebraKind::DirectSum) {
    std::vector<Element> comps;
    for (const auto& p : a.parts()) comps.push_back(gaussian(p, rng));
    return a.from_components(comps);
  }
  std::normal_distribution<double> g(0.0, entry_scale(a));
  std::vector<Complex> c(a.dim());
  for (auto& v : c) v = Complex(g(rng), g(rng));
  return a.element(std::move(c));
}

}  // namespace

Element random_element(const Algebra& a, std::uint64_t seed, Flavor flavor) {
  std::mt19937_64 rng(seed);
  switch (flavor) {
    case Flavor::General: return gaussian(a, rng);
    case Flavor::SelfAdjoint: return self_adjoint_part(a, gaussian(a, rng));
    case Flavor::Positive: {
      const Element b = self_adjoint_part(a, gaussian(a, rng));
      return a.product(b, b);
    }
    case Flavor::Projection: {
      const Element h = self_adjoint_part(a, gaussian(a, rng));
      const auto sd = spectral_decomposition(a, h);
      const std::size_t m = sd.pairs.size();
      if (m < 2) return a.unit();
      // A proper, nonempty subset of the spectral projections.
      std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << m) - 2);
      const std::uint64_t mask = m >= 63 ? rng() | 1 : pick(rng);
      Element p = a.zero();
      for (std::size_t j = 0; j < m; ++j)
        if ((mask >> j) & 1u) p += sd.pairs[j].second;
      return self_adjoint_part(a, p);
    }
    case Flavor::Unitary: {
      const Element h = self_adjoint_part(a, gaussian(a, rng));
      return exp_i(a, h, 1.0);
    }
  }
  return a.zero();
}

}  // namespace jbstar
