#include "jbstar/sampling.hpp"

#include <random>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"

namespace jbstar {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string_view to_string(OcStrategy s) noexcept {
  switch (s) {
    case OcStrategy::SameGenerator: return "same-generator";
    case OcStrategy::Spin: return "spin";
    case OcStrategy::Diagonal: return "diagonal";
  }
  return "?";
}

OcPairSampler::OcPairSampler(Algebra A, OcStrategy strategy) : A_(std::move(A)), strategy_(strategy) {
  if (strategy_ == OcStrategy::Diagonal && A_.kind() != AlgebraKind::HermitianMatrix)
    throw Error(ErrorKind::PreconditionFailed, "diagonal sampler needs a hermitian matrix algebra");
  if (strategy_ == OcStrategy::SameGenerator) {
    for (const auto& z : center_basis(A_)) {
      centre_.push_back(self_adjoint_part(A_, z));
      centre_.push_back(self_adjoint_part(A_, z * Complex(0.0, 1.0)));
    }
  }
}

std::pair<Element, Element> OcPairSampler::sample(std::uint64_t seed) const {
  std::mt19937_64 rng(derive_seed(seed, 0x0c));
  std::normal_distribution<double> g(0.0, 1.0);
  switch (strategy_) {
    case OcStrategy::SameGenerator: {
      const Element a = random_element(A_, seed, Flavor::SelfAdjoint);
      Element b = A_.unit() * g(rng) + a * g(rng) + A_.product(a, a) * (0.5 * g(rng));
      for (const auto& z : centre_) b += z * (0.5 * g(rng));
      return {a, self_adjoint_part(A_, b)};
    }
    case OcStrategy::Spin: {
      const Element a = random_element(A_, seed, Flavor::SelfAdjoint);
      return {a, A_.unit() * g(rng) + a * g(rng)};
    }
    case OcStrategy::Diagonal: {
      const std::size_t n = A_.order();
      const ComplexMatrix v = A_.to_matrix(random_element(A_, seed, Flavor::Unitary));
      std::vector<Complex> d1(n), d2(n);
      for (std::size_t i = 0; i < n; ++i) {
        d1[i] = g(rng);
        d2[i] = g(rng);
      }
      const ComplexMatrix va = v.adjoint();
      const auto conj = [&](const std::vector<Complex>& d) {
        return self_adjoint_part(A_, A_.from_matrix(v * ComplexMatrix::diagonal(d) * va));
      };
      return {conj(d1), conj(d2)};
    }
  }
  throw Error(ErrorKind::PreconditionFailed, "unknown sampler strategy");
}

std::pair<Element, Element> random_noncommuting_pair(const Algebra& A, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const Element a = random_element(A, derive_seed(seed, 2 * attempt), Flavor::SelfAdjoint);
    const Element b = random_element(A, derive_seed(seed, 2 * attempt + 1), Flavor::SelfAdjoint);
    const Commutation c = operator_commutes(A, a, b);
    if (c.residual > 1e-2 * (1.0 + A.norm(a)) * (1.0 + A.norm(b))) return {a, b};
  }
  throw Error(ErrorKind::PreconditionFailed, "no non-commuting pair found; algebra looks associative");
}

Element random_spectral_projection(const Algebra& A, const Element& a, std::uint64_t seed) {
  const auto sd = spectral_decomposition(A, a);
  const std::size_t m = sd.pairs.size();
  std::mt19937_64 rng(seed);
  std::uint64_t mask;
  if (m < 2) {
    mask = rng() & 1u;
  } else if (m >= 63) {
    mask = rng() | 1u;
  } else {
    std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << m) - 2);
    mask = pick(rng);
  }
  Element p = A.zero();
  for (std::size_t j = 0; j < m; ++j)
    if ((mask >> j) & 1u) p += sd.pairs[j].second;
  return self_adjoint_part(A, p);
}

Element random_tripotent(const Algebra& A, std::uint64_t seed) {
  const Element p = random_element(A, derive_seed(seed, 1), Flavor::Projection);
  const Element u = random_element(A, derive_seed(seed, 2), Flavor::Unitary);
  return u_operator(A, u, p);
}

}  // namespace jbstar
