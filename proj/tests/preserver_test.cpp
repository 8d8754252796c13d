#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"
#include "jbstar/preserver.hpp"
#include "jbstar/unitary.hpp"
#include "oracle.hpp"

namespace {

using jbstar::Algebra;
using jbstar::Complex;
using jbstar::Dichotomy;
using jbstar::Element;
using jbstar::ErrorKind;
using jbstar::Flavor;
using jbstar::MapUnderTest;
using jbstar::OcStrategy;

constexpr std::size_t kTrials = 60;

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const jbstar::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

Element spin_sa(const Algebra& s, double lambda, const std::vector<double>& t) {
  std::vector<Complex> c(s.dim());
  c[0] = lambda;
  for (std::size_t i = 0; i < t.size(); ++i) c[i + 1] = Complex(0.0, t[i]);
  return s.element(c);
}

MapUnderTest random_conjugation(const Algebra& A, std::uint64_t seed) {
  return jbstar::conjugation_map(A, jbstar::random_element(A, seed, Flavor::Unitary));
}

// ------------------------------------------------------------ map library

TEST(Maps, ConjugationMatchesMatrixOracle) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const Element w = jbstar::random_element(A, 1, Flavor::Unitary);
  const auto m = jbstar::conjugation_map(A, w);
  const oracle::Mat wm = oracle::to_mat(A, w);
  for (int k = 0; k < 20; ++k) {
    const Element x = jbstar::random_element(A, 10 + k, Flavor::General);
    const oracle::Mat want = wm * oracle::to_mat(A, x) * wm.adjoint();
    EXPECT_LT((oracle::to_mat(A, m(x)) - want).norm(), 1e-12);
    EXPECT_LT(A.distance(m.invert(m(x)), x), 1e-12);
  }
}

TEST(Maps, ComposeRequiresMatchingAlgebras) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  const Algebra B = jbstar::build_hermitian_matrix_algebra(2);
  EXPECT_EQ(error_kind([&] { jbstar::compose(jbstar::identity_map(A), jbstar::identity_map(B)); }),
            ErrorKind::AlgebraMismatch);
  const auto c = jbstar::compose(jbstar::transpose_map(A), jbstar::star_map(A));
  const Element x = jbstar::random_element(A, 3, Flavor::General);
  EXPECT_LT(A.distance(c.invert(c(x)), x), 1e-14);
}

TEST(Maps, ThetaCandidatesAreJordanStarIsomorphisms) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  EXPECT_NO_THROW(jbstar::verify_jordan_star_isomorphism(jbstar::identity_map(A), 20, 1));
  EXPECT_NO_THROW(jbstar::verify_jordan_star_isomorphism(jbstar::transpose_map(A), 20, 2));
  EXPECT_NO_THROW(jbstar::verify_jordan_star_isomorphism(random_conjugation(A, 5), 20, 3));
  EXPECT_EQ(error_kind([&] { jbstar::verify_jordan_star_isomorphism(jbstar::star_map(A), 20, 4); }),
            ErrorKind::PreconditionFailed);
  const Element w = jbstar::random_element(A, 6, Flavor::Unitary);
  EXPECT_EQ(error_kind([&] { jbstar::verify_jordan_star_isomorphism(jbstar::u_operator_map(A, w), 20, 4); }),
            ErrorKind::PreconditionFailed);
}

// ------------------------------------------------------------ OC additive / quadratic

TEST(OcAdditive, Examples) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  EXPECT_TRUE(jbstar::check_oc_additive(random_conjugation(A, 2), OcStrategy::SameGenerator, kTrials, 1).passed);
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const auto sq = jbstar::check_oc_additive(jbstar::square_map(H2), OcStrategy::SameGenerator, kTrials, 1);
  EXPECT_FALSE(sq.passed);
  EXPECT_TRUE(sq.witness.has_value());
  EXPECT_GT(sq.max_residual, 1e-3);
}

TEST(OcAdditive, RejectsBadSampler) {
  // A valid sampler never trips; a pair is rejected only when it fails.
  const Algebra A = jbstar::build_spin_factor(4);
  EXPECT_NO_THROW(jbstar::check_oc_additive(jbstar::identity_map(A), OcStrategy::Spin, 30, 1));
  EXPECT_EQ(error_kind([&] { jbstar::OcPairSampler(A, OcStrategy::Diagonal); }), ErrorKind::PreconditionFailed);
}

TEST(OcQuadratic, Examples) {
  for (const auto& A : {jbstar::build_hermitian_matrix_algebra(3), jbstar::build_spin_factor(5)}) {
    EXPECT_TRUE(jbstar::check_oc_quadratic(jbstar::identity_map(A), OcStrategy::SameGenerator, kTrials, 3).passed);
    EXPECT_TRUE(jbstar::check_oc_quadratic(jbstar::negation_map(A), OcStrategy::SameGenerator, kTrials, 3).passed);
  }
  // Squaring is quadratic on commuting pairs: (U_a b)² = U_{a²}(b²).
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  EXPECT_TRUE(jbstar::check_oc_quadratic(jbstar::square_map(H2), OcStrategy::SameGenerator, kTrials, 3).passed);
  const auto twice = jbstar::linear_map(H2, H2, jbstar::ComplexMatrix::identity(4) * 2.0);
  const auto r = jbstar::check_oc_quadratic(twice, OcStrategy::SameGenerator, kTrials, 3);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.witness.has_value());
}

// ------------------------------------------------------------ unitaries

TEST(PiecewiseHom, Examples) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto theta = random_conjugation(A, 8);
  EXPECT_TRUE(jbstar::check_piecewise_hom_on_unitaries(theta, OcStrategy::SameGenerator, kTrials, 1).passed);
  const auto inv = jbstar::compose(theta, jbstar::star_map(A));
  const auto r = jbstar::check_piecewise_hom_on_unitaries(inv, OcStrategy::SameGenerator, kTrials, 2);
  EXPECT_TRUE(r.passed) << r.max_residual;
  EXPECT_LT(*r.find_metric("unitality"), 1e-12);
}

TEST(PiecewiseHom, NonCentralUOperatorIsNegativeControl) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const Element w = jbstar::exp_i(H2, jbstar::random_element(H2, 4, Flavor::SelfAdjoint), 1.3);
  const auto m = jbstar::u_operator_map(H2, w);
  const auto r = jbstar::check_hom_on_noncommuting_unitaries(m, 20, 5);
  EXPECT_EQ(r.outcome(), jbstar::Outcome::FailAsExpected);
  EXPECT_FALSE(jbstar::check_piecewise_hom_on_unitaries(m, OcStrategy::SameGenerator, 20, 5).passed);
}

TEST(PiecewiseHom, NonUnitaryImageThrows) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const auto twice = jbstar::linear_map(H2, H2, jbstar::ComplexMatrix::identity(4) * 2.0);
  EXPECT_EQ(error_kind([&] { jbstar::check_piecewise_hom_on_unitaries(twice, OcStrategy::SameGenerator, 5, 1); }),
            ErrorKind::NonUnitaryImage);
}

TEST(PiecewiseHom, UnitalityFollows) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  for (const auto& m : {jbstar::identity_map(A), jbstar::transpose_map(A), random_conjugation(A, 3),
                        jbstar::compose(jbstar::transpose_map(A), jbstar::star_map(A))}) {
    const auto r = jbstar::check_piecewise_hom_on_unitaries(m, OcStrategy::SameGenerator, 20, 4);
    ASSERT_TRUE(r.passed) << m.label;
    EXPECT_LT(A.distance(m(A.unit()), A.unit()), 1e-12) << m.label;
  }
}

// ------------------------------------------------------------ generator map

TEST(GeneratorMap, Examples) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto theta = random_conjugation(A, 11);
  for (int k = 0; k < 10; ++k) {
    const Element a = jbstar::random_element(A, 100 + k, Flavor::SelfAdjoint);
    EXPECT_LT(A.distance(jbstar::derive_generator_map(jbstar::identity_map(A), a, 0.1), a), 1e-8);
    EXPECT_LT(A.distance(jbstar::derive_generator_map(jbstar::star_map(A), a, 0.1), -a), 1e-8);
    EXPECT_LT(A.distance(jbstar::derive_generator_map(theta, a, 0.1), theta(a)), 1e-8);
  }
}

TEST(GeneratorMap, InconsistentScalingDetected) {
  // Φ(e^{ia}) = e^{i(a + a²)}: the quotient log Φ(e^{ita})/t depends on t.
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  const MapUnderTest m{A, A,
                       [A](const Element& u) {
                         const Element a = jbstar::unitary_log(A, u).h;
                         return jbstar::exp_i(A, a + A.product(a, a), 1.0);
                       },
                       "quadratic_generator", {}};
  const Element a = jbstar::random_element(A, 1, Flavor::SelfAdjoint);
  EXPECT_EQ(error_kind([&] { jbstar::derive_generator_map(m, a, 0.5); }), ErrorKind::Inconsistent);
}

TEST(GeneratorMap, BranchAmbiguityPropagates) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  const Element p = A.element({1.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(error_kind([&] { jbstar::derive_generator_map(jbstar::identity_map(A), p * std::numbers::pi, 1.0); }),
            ErrorKind::BranchAmbiguity);
}

TEST(GeneratorProperties, ThetaPassesWithUnitBound) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto r = jbstar::check_generator_properties(random_conjugation(A, 12), OcStrategy::SameGenerator, 30, 1);
  EXPECT_TRUE(r.passed) << r.witness.value_or("");
  EXPECT_NEAR(*r.find_metric("bound"), 1.0, 1e-6);
}

TEST(GeneratorProperties, ExpFormPasses) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto theta = jbstar::transpose_map(A);
  auto beta = [A](const Element& a) {
    return A.unit() * (0.3 * A.to_matrix(a).trace().real());
  };
  const auto m = jbstar::exp_form_map(theta, beta, A.unit() * 1.5);
  const auto r = jbstar::check_generator_properties(m, OcStrategy::SameGenerator, 30, 2);
  EXPECT_TRUE(r.passed) << r.witness.value_or("");
}

TEST(GeneratorProperties, WarpFails) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const auto r = jbstar::check_generator_properties(jbstar::generator_warp_map(H2, 0.3), OcStrategy::SameGenerator, 30, 3);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.witness.has_value());
}

// ------------------------------------------------------------ structure form

TEST(PreserverForm, TrivialCase) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto theta = jbstar::identity_map(A);
  auto zero = [A](const Element&) { return A.zero(); };
  const MapUnderTest m{A, A, [](const Element& u) { return u; }, "identity_on_unitaries", {}};
  EXPECT_TRUE(jbstar::verify_unitary_preserver_form(m, theta, zero, A.unit(), kTrials, 1).passed);
}

TEST(PreserverForm, TraceBetaSelfConsistent) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto theta = random_conjugation(A, 21);
  auto beta = [A](const Element& a) { return A.unit() * (0.2 * A.to_matrix(a).trace().real()); };
  const auto m = jbstar::exp_form_map(theta, beta, A.unit());
  const auto r = jbstar::verify_unitary_preserver_form(m, theta, beta, A.unit(), kTrials, 2);
  EXPECT_TRUE(r.passed) << r.max_residual;
  EXPECT_LT(*r.find_metric("formula_paths_gap"), 1e-9);
}

TEST(PreserverForm, ScalarCentralElement) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const auto theta = jbstar::transpose_map(H2);
  auto zero = [H2](const Element&) { return H2.zero(); };
  const MapUnderTest m{H2, H2, [H2, theta](const Element& u) { return theta(jbstar::unitary_power(H2, u, 2)); },
                       "theta_of_square", {}};
  const auto r = jbstar::verify_unitary_preserver_form(m, theta, zero, H2.unit() * 2.0, kTrials, 3);
  EXPECT_TRUE(r.passed) << r.max_residual;
}

TEST(PreserverForm, BrokenHypothesesNamed) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  auto zero = [H2](const Element&) { return H2.zero(); };
  const auto id = jbstar::identity_map(H2);
  const Element noncentral = H2.element({1.0, 0.0, 0.0, 2.0});
  EXPECT_EQ(error_kind([&] { jbstar::verify_unitary_preserver_form(id, id, zero, noncentral, 5, 1); }),
            ErrorKind::PreconditionFailed);
  EXPECT_EQ(error_kind([&] { jbstar::verify_unitary_preserver_form(id, jbstar::square_map(H2), zero, H2.unit(), 5, 1); }),
            ErrorKind::PreconditionFailed);
  auto bad_beta = [H2](const Element& a) { return a; };
  EXPECT_EQ(error_kind([&] { jbstar::verify_unitary_preserver_form(id, id, bad_beta, H2.unit(), 5, 1); }),
            ErrorKind::PreconditionFailed);
}

// ------------------------------------------------------------ factor dichotomy

TEST(FactorDichotomy, Examples) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto theta = random_conjugation(A, 31);
  EXPECT_EQ(jbstar::classify_factor_dichotomy(theta, theta, 50, 1).verdict, Dichotomy::IdentityCase);
  EXPECT_EQ(jbstar::classify_factor_dichotomy(jbstar::compose(theta, jbstar::star_map(A)), theta, 50, 2).verdict,
            Dichotomy::InverseCase);
  const auto twisted = jbstar::classify_factor_dichotomy(jbstar::phase_map(theta, std::numbers::pi / 4), theta, 50, 3);
  EXPECT_EQ(twisted.verdict, Dichotomy::Neither);
  EXPECT_TRUE(twisted.witness.has_value());
}

TEST(FactorDichotomy, FiveRandomThetas) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  for (int k = 0; k < 5; ++k) {
    const auto conj = random_conjugation(A, 40 + k);
    const auto theta = k % 2 ? jbstar::compose(conj, jbstar::transpose_map(A)) : conj;
    EXPECT_EQ(jbstar::classify_factor_dichotomy(theta, theta, 30, k).verdict, Dichotomy::IdentityCase);
    EXPECT_EQ(jbstar::classify_factor_dichotomy(jbstar::compose(theta, jbstar::star_map(A)), theta, 30, k).verdict,
              Dichotomy::InverseCase);
  }
}

TEST(FactorDichotomy, Preconditions) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const Algebra sum = jbstar::build_direct_sum({H2, H2});
  EXPECT_EQ(error_kind([&] {
              jbstar::classify_factor_dichotomy(jbstar::identity_map(sum), jbstar::identity_map(sum), 5, 1);
            }),
            ErrorKind::NotAFactor);
  const Algebra S = jbstar::build_spin_factor(4);
  EXPECT_EQ(error_kind([&] { jbstar::classify_factor_dichotomy(jbstar::identity_map(S), jbstar::identity_map(S), 5, 1); }),
            ErrorKind::NotAFactor);
}

// ------------------------------------------------------------ structure recovery

TEST(StructureRecovery, JordanIsomorphismOnH3) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto s = jbstar::recover_structure(random_conjugation(A, 51), kTrials, 1);
  EXPECT_LT(A.distance(s.w, A.unit()), 1e-12);
  EXPECT_LE(s.hom_residual, 1e-8);
  EXPECT_LE(s.general_hom_residual, 1e-8);
  EXPECT_LE(s.linearity_residual, 1e-8);
  ASSERT_TRUE(s.w_central_symmetry.has_value());
  EXPECT_TRUE(*s.w_central_symmetry);
  EXPECT_TRUE(jbstar::structure_recovery_report(s).passed);
}

TEST(StructureRecovery, CentralSymmetryTwistOnDirectSum) {
  const Algebra H3 = jbstar::build_hermitian_matrix_algebra(3);
  const Algebra A = jbstar::build_direct_sum({H3, H3});
  const std::vector<Element> parts = {H3.unit(), -H3.unit()};
  const Element s = A.from_components(parts);
  const auto m = jbstar::central_symmetry_twist(jbstar::identity_map(A), s);
  const auto rec = jbstar::recover_structure(m, kTrials, 2);
  EXPECT_LT(A.distance(rec.w, s), 1e-12);
  EXPECT_LE(rec.hom_residual, 1e-6);
  EXPECT_LE(rec.general_hom_residual, 1e-6);
  ASSERT_TRUE(rec.w_central_symmetry.has_value());
  EXPECT_TRUE(*rec.w_central_symmetry);
  EXPECT_EQ(rec.peirce2.dim(), A.dim());
}

TEST(StructureRecovery, SpinCounterexampleIsNonlinear) {
  const auto cx = jbstar::build_spin_counterexample(3, 0.3);
  const auto rec = jbstar::recover_structure(cx.map, 200, 3);
  EXPECT_LE(rec.hom_residual, 1e-8);
  EXPECT_GE(rec.linearity_residual, 0.05);
  EXPECT_FALSE(jbstar::structure_recovery_report(rec).passed);
}

TEST(StructureRecovery, HypothesisFailure) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  EXPECT_EQ(error_kind([&] { jbstar::recover_structure(jbstar::square_map(H2), 10, 1); }),
            ErrorKind::HypothesisFailed);
}

TEST(StructureRecovery, IsometryIsReportedNotGated) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto m = jbstar::linear_map(A, A, jbstar::ComplexMatrix::identity(A.dim()) * 1.0, "identity_matrix");
  const auto rec = jbstar::recover_structure(m, 20, 4);
  ASSERT_TRUE(rec.isometry_residual.has_value());
  EXPECT_LT(*rec.isometry_residual, 1e-12);
  EXPECT_FALSE(rec.bijective.has_value());
}

// ------------------------------------------------------------ spin counterexample

TEST(SpinCounterexample, BuildPreconditions) {
  EXPECT_EQ(error_kind([] { jbstar::build_spin_counterexample(3, 0.0); }), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(error_kind([] { jbstar::build_spin_counterexample(3, 0.5); }), ErrorKind::ParamOutOfRange);
  EXPECT_EQ(error_kind([] { jbstar::build_spin_counterexample(2, 0.3); }), ErrorKind::SizeOutOfRange);
}

TEST(SpinCounterexample, WarpProperties) {
  const auto cx = jbstar::build_spin_counterexample(4, 0.3);
  const Algebra& S = cx.algebra;
  const auto& F = cx.map;
  EXPECT_EQ(F(S.zero()), S.zero());
  for (int k = 0; k < 50; ++k) {
    const Element h = jbstar::random_element(S, 200 + k, Flavor::SelfAdjoint);
    for (double t : {-2.0, -1.0, 0.5, 3.0}) EXPECT_LT(S.distance(F(h * t), F(h) * t), 1e-12 * (1 + S.norm(h) * std::abs(t)));
    EXPECT_NEAR(S.norm(F(h)), S.norm(h), 1e-12);
    // λ is untouched
    EXPECT_NEAR(F(h)[0].real(), h[0].real(), 1e-15);
  }
}

TEST(SpinCounterexample, BasisWitness) {
  const auto cx = jbstar::build_spin_counterexample(3, 0.3);
  const Algebra& S = cx.algebra;
  const Element e1 = spin_sa(S, 0, {1, 0}), e2 = spin_sa(S, 0, {0, 1});
  // F fixes both axes; on the diagonal the angle moves from π/4 to π/4 + 0.3.
  EXPECT_LT(S.distance(cx.map(e1), e1), 1e-15);
  EXPECT_LT(S.distance(cx.map(e2), e2), 1e-15);
  const double gap = S.distance(cx.map(e1 + e2), e1 + e2);
  EXPECT_NEAR(gap, std::sqrt(2.0) * 2 * std::sin(0.15), 1e-12);
  EXPECT_GE(gap, 0.1);
}

TEST(SpinCounterexample, ClosedFormOfUOperator) {
  const Algebra S = jbstar::build_spin_factor(5);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double alpha = g(rng), t = g(rng), s = g(rng);
    const Element h = spin_sa(S, 0, {g(rng), g(rng), g(rng), g(rng)});
    const Element a = S.unit() * alpha + h;
    const Element b = S.unit() * t + a * s;
    // oracle: spin product written out directly
    auto prod = [&](const Element& x, const Element& y) {
      return S.element(oracle::Spin::product({x.coords().begin(), x.coords().end()},
                                             {y.coords().begin(), y.coords().end()}));
    };
    const Element ua = prod(prod(a, b), a) * 2.0 - prod(prod(a, a), b);
    EXPECT_LT(S.distance(ua, jbstar::spin_u_closed_form(S, alpha, h, t, s)), 1e-10 * (1 + std::pow(S.norm(a), 3)));
  }
  const Element h = spin_sa(S, 0, {1, 0, 0, 0});
  EXPECT_LT(S.distance(jbstar::spin_u_closed_form(S, 1, h, 0, 1), S.unit() * 4.0 + h * 4.0), 1e-15);
  EXPECT_LT(S.distance(jbstar::spin_u_truncated_form(S, 1, h, 0, 1), S.unit() * 3.0 + h * 3.0), 1e-15);
}

TEST(SpinCounterexample, FourVerdicts) {
  const auto cx = jbstar::build_spin_counterexample(3, 0.3);
  const auto reports = jbstar::verify_counterexample(cx, 500, 7);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].outcome(), jbstar::Outcome::Pass);
  EXPECT_LE(reports[0].max_residual, 1e-9);
  EXPECT_EQ(reports[1].outcome(), jbstar::Outcome::Pass);
  EXPECT_LE(*reports[1].find_metric("closed_form_residual"), 1e-8);
  EXPECT_EQ(reports[2].outcome(), jbstar::Outcome::FailAsExpected);
  EXPECT_GE(reports[2].max_residual, 0.1);
  EXPECT_EQ(reports[3].outcome(), jbstar::Outcome::Pass);
  EXPECT_TRUE(jbstar::all_ok(reports));
}

// ------------------------------------------------------------ centre preservation

TEST(CentralPreservation, Examples) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const Algebra H1 = jbstar::build_hermitian_matrix_algebra(1);
  const Algebra A = jbstar::build_direct_sum({H2, H1});
  const auto theta = jbstar::direct_sum_map(A, A, {random_conjugation(H2, 3), jbstar::identity_map(H1)});
  EXPECT_TRUE(jbstar::check_central_preservation(theta, 30, 1).passed);
  EXPECT_TRUE(jbstar::check_central_preservation(jbstar::compose(theta, jbstar::star_map(A)), 30, 2).passed);
  // U_w with w = (v, 1), v² not central: moves 1 off the centre.
  const Element v = jbstar::exp_i(H2, jbstar::random_element(H2, 9, Flavor::SelfAdjoint), 1.1);
  const std::vector<Element> parts = {v, H1.unit()};
  const auto warped = jbstar::u_operator_map(A, A.from_components(parts));
  const auto r = jbstar::check_central_preservation(warped, 30, 3);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.witness.has_value());
  EXPECT_EQ(error_kind([&] { jbstar::check_central_preservation(jbstar::square_map(A), 3, 1); }),
            ErrorKind::PreconditionFailed);
}

TEST(PhiI1, LinearAndConjugateLinear) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const auto lin = jbstar::check_phi_i1(random_conjugation(A, 4));
  EXPECT_TRUE(lin.passed);
  EXPECT_NEAR(*lin.find_metric("z_norm"), 1.0, 1e-12);
  const auto anti = jbstar::check_phi_i1(jbstar::star_map(A));
  EXPECT_TRUE(anti.passed);
  EXPECT_NEAR(*anti.find_metric("z_norm"), 0.0, 1e-12);
  // mixed: linear on one summand, conjugate linear on the other
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const Algebra S = jbstar::build_direct_sum({H2, H2});
  const auto mixed = jbstar::direct_sum_map(S, S, {jbstar::identity_map(H2), jbstar::star_map(H2)});
  EXPECT_TRUE(jbstar::check_phi_i1(mixed).passed);
  // A global phase keeps the form, with z the unit of the Peirce-2 algebra.
  EXPECT_TRUE(jbstar::check_phi_i1(jbstar::phase_map(jbstar::identity_map(A), 0.4)).passed);
  const MapUnderTest real_part{A, A, [A](const Element& x) { return jbstar::self_adjoint_part(A, x); }, "real_part", {}};
  EXPECT_FALSE(jbstar::check_phi_i1(real_part).passed);
}

}  // namespace
