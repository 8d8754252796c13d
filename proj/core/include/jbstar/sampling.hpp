#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jbstar/algebra.hpp"

namespace jbstar {

/// Mixes a base seed with a trial index (splitmix64), so that trials are
/// independent yet reproducible.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Strategies for drawing operator-commuting self-adjoint pairs. Rejection
/// sampling essentially never produces such pairs, so they are built.
///
/// * SameGenerator: b = c₀1 + c₁a + c₂a² + z with z central.
/// * Spin: b = t1 + s·a.
/// * Diagonal: a = V D₁ V*, b = V D₂ V* (HermitianMatrix only).
enum class OcStrategy { SameGenerator, Spin, Diagonal };

std::string_view to_string(OcStrategy s) noexcept;

class OcPairSampler {
 public:
  /// Throws PreconditionFailed for Diagonal on a non-matrix algebra.
  OcPairSampler(Algebra A, OcStrategy strategy);

  const Algebra& algebra() const noexcept { return A_; }
  OcStrategy strategy() const noexcept { return strategy_; }

  std::pair<Element, Element> sample(std::uint64_t seed) const;

 private:
  Algebra A_;
  OcStrategy strategy_;
  std::vector<Element> centre_;  // self-adjoint spanning set of the centre
};

/// Independent random self-adjoint elements that fail to operator commute by
/// a margin (retries with fresh seeds). Throws PreconditionFailed when the
/// algebra is associative.
std::pair<Element, Element> random_noncommuting_pair(const Algebra& A, std::uint64_t seed);

/// Proper sum of spectral projections of a self-adjoint a, chosen by seed.
Element random_spectral_projection(const Algebra& A, const Element& a, std::uint64_t seed);

/// U_u(p) for a random unitary u and random projection p.
Element random_tripotent(const Algebra& A, std::uint64_t seed);

}  // namespace jbstar
