#include <gtest/gtest.h>

#include "jbstar/error.hpp"
#include "jbstar/peirce.hpp"
#include "jbstar/sampling.hpp"
#include "oracle.hpp"

namespace {

using jbstar::Algebra;
using jbstar::Complex;
using jbstar::Element;
using jbstar::Flavor;

constexpr int kIterations = 20;

Element diag(const Algebra& A, std::initializer_list<double> d) {
  const std::size_t n = A.order();
  std::vector<Complex> c(n * n);
  std::size_t i = 0;
  for (double v : d) c[i * n + i] = v, ++i;
  return A.element(c);
}

std::vector<Algebra> models() {
  return {jbstar::build_hermitian_matrix_algebra(2), jbstar::build_hermitian_matrix_algebra(3),
          jbstar::build_spin_factor(3), jbstar::build_spin_factor(4),
          jbstar::build_direct_sum({jbstar::build_hermitian_matrix_algebra(2), jbstar::build_spin_factor(3)})};
}

double frob(const jbstar::ComplexMatrix& m) { return m.frobenius_norm(); }

TEST(Tripotent, Examples) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  EXPECT_TRUE(jbstar::is_tripotent(A, diag(A, {1, 0, 1})));
  EXPECT_TRUE(jbstar::is_tripotent(A, jbstar::random_element(A, 3, Flavor::Unitary)));
  const auto t = jbstar::is_tripotent(A, A.unit() * 2.0);
  EXPECT_FALSE(t);
  EXPECT_NEAR(t.residual, 6.0, 1e-12);
}

TEST(Tripotent, RandomTripotentsAreTripotents) {
  for (const auto& A : models())
    for (int k = 0; k < kIterations; ++k)
      EXPECT_TRUE(jbstar::is_tripotent(A, jbstar::random_tripotent(A, k))) << A.describe();
}

TEST(PeirceSystem, UnitAndZero) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  const auto id = jbstar::ComplexMatrix::identity(A.dim());
  const auto one = jbstar::peirce_system(A, A.unit());
  EXPECT_LT(frob(one.p2 - id), 1e-12);
  EXPECT_LT(frob(one.p1), 1e-12);
  EXPECT_LT(frob(one.p0), 1e-12);
  const auto zero = jbstar::peirce_system(A, A.zero());
  EXPECT_LT(frob(zero.p0 - id), 1e-12);
  EXPECT_LT(frob(zero.p2) + frob(zero.p1), 1e-12);
}

TEST(PeirceSystem, NotTripotentThrows) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  try {
    jbstar::peirce_system(A, A.unit() * 2.0);
    FAIL();
  } catch (const jbstar::Error& e) {
    EXPECT_EQ(e.kind(), jbstar::ErrorKind::NotTripotent);
  }
}

TEST(PeirceSystem, CornerProjectionMatchesMatrixCompression) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  const auto s = jbstar::peirce_system(A, diag(A, {1, 0}));
  oracle::Mat p = oracle::Mat::Zero(2, 2);
  p(0, 0) = 1;
  const oracle::Mat q = oracle::Mat::Identity(2, 2) - p;
  for (int k = 0; k < kIterations; ++k) {
    const Element x = jbstar::random_element(A, 40 + k, Flavor::General);
    const oracle::Mat xm = oracle::to_mat(A, x);
    const oracle::Mat e2 = p * xm * p, e1 = p * xm * q + q * xm * p, e0 = q * xm * q;
    EXPECT_LT((oracle::from_coords(s.p2.apply(x.coords()), 2) - e2).norm(), 1e-12);
    EXPECT_LT((oracle::from_coords(s.p1.apply(x.coords()), 2) - e1).norm(), 1e-12);
    EXPECT_LT((oracle::from_coords(s.p0.apply(x.coords()), 2) - e0).norm(), 1e-12);
  }
}

TEST(PeirceSystem, InvariantsOnRandomTripotents) {
  for (const auto& A : models()) {
    const auto id = jbstar::ComplexMatrix::identity(A.dim());
    for (int k = 0; k < kIterations; ++k) {
      const auto s = jbstar::peirce_system(A, jbstar::random_tripotent(A, 100 + k));
      EXPECT_LE(s.residual, 1e-8) << A.describe();
      EXPECT_LE(jbstar::operator_norm(s.p2 + s.p1 + s.p0 - id), 1e-8);
    }
  }
}

// Projections onto the eigenspaces of L(e,e) at 1, ½ and 0, built from
// Eigen's general eigensolver rather than the polynomials.
TEST(PeirceSystem, AgreesWithEigenspaceProjections) {
  for (const auto& A : models()) {
    for (int k = 0; k < kIterations; ++k) {
      const auto s = jbstar::peirce_system(A, jbstar::random_tripotent(A, 300 + k));
      const oracle::Mat l = oracle::from_matrix(s.l_ee);
      Eigen::ComplexEigenSolver<oracle::Mat> es(l);
      const oracle::Mat v = es.eigenvectors();
      const oracle::Mat vinv = v.inverse();
      auto proj = [&](double mu) {
        oracle::Mat d = oracle::Mat::Zero(l.rows(), l.cols());
        for (Eigen::Index i = 0; i < l.rows(); ++i)
          if (std::abs(es.eigenvalues()(i) - mu) < 1e-4) d(i, i) = 1;
        return oracle::Mat(v * d * vinv);
      };
      EXPECT_LT((proj(1.0) - oracle::from_matrix(s.p2)).norm(), 1e-7) << A.describe();
      EXPECT_LT((proj(0.5) - oracle::from_matrix(s.p1)).norm(), 1e-7) << A.describe();
      EXPECT_LT((proj(0.0) - oracle::from_matrix(s.p0)).norm(), 1e-7) << A.describe();
    }
  }
}

TEST(PeirceSystem, UnitariesHaveFullPeirceTwo) {
  for (const auto& A : models()) {
    const auto id = jbstar::ComplexMatrix::identity(A.dim());
    for (int k = 0; k < kIterations; ++k) {
      const auto s = jbstar::peirce_system(A, jbstar::random_element(A, 500 + k, Flavor::Unitary));
      EXPECT_LT(jbstar::operator_norm(s.p2 - id), 1e-8) << A.describe();
    }
  }
}

TEST(Peirce2Algebra, UnitGivesSameAlgebra) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(3);
  const Algebra P = jbstar::peirce2_algebra(A, A.unit());
  ASSERT_EQ(P.dim(), A.dim());
  EXPECT_LT(A.distance(P.embed(P.unit()), A.unit()), 1e-12);
  for (int k = 0; k < kIterations; ++k) {
    const Element a = jbstar::random_element(A, 600 + k, Flavor::General);
    const Element b = jbstar::random_element(A, 700 + k, Flavor::General);
    const Element pa = P.restrict(a), pb = P.restrict(b);
    EXPECT_LT(A.distance(P.embed(P.product(pa, pb)), A.product(a, b)), 1e-12);
    EXPECT_LT(A.distance(P.embed(P.involution(pa)), A.involution(a)), 1e-12);
    EXPECT_NEAR(P.norm(pa), A.norm(a), 1e-12);
  }
}

// {a,−1,b} = −a∘b and {−1,a,−1} = a*
TEST(Peirce2Algebra, MinusUnit) {
  const Algebra A = jbstar::build_spin_factor(4);
  const Algebra P = jbstar::peirce2_algebra(A, -A.unit());
  ASSERT_EQ(P.dim(), A.dim());
  for (int k = 0; k < kIterations; ++k) {
    const Element a = jbstar::random_element(A, 800 + k, Flavor::General);
    const Element b = jbstar::random_element(A, 900 + k, Flavor::General);
    const Element pa = P.restrict(a), pb = P.restrict(b);
    EXPECT_LT(A.distance(P.embed(P.product(pa, pb)), -A.product(a, b)), 1e-12);
    EXPECT_LT(A.distance(P.embed(P.involution(pa)), A.involution(a)), 1e-12);
  }
}

TEST(Peirce2Algebra, CornerIsOneDimensional) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  EXPECT_EQ(jbstar::peirce2_algebra(A, diag(A, {1, 0})).dim(), 1u);
  const Algebra H3 = jbstar::build_hermitian_matrix_algebra(3);
  EXPECT_EQ(jbstar::peirce2_algebra(H3, diag(H3, {1, 1, 0})).dim(), 4u);
}

TEST(Peirce2Algebra, ZeroTripotentRejected) {
  const Algebra A = jbstar::build_hermitian_matrix_algebra(2);
  EXPECT_THROW(jbstar::peirce2_algebra(A, A.zero()), jbstar::Error);
}

TEST(Peirce2Algebra, CentralSymmetryKeepsNorm) {
  const Algebra H2 = jbstar::build_hermitian_matrix_algebra(2);
  const Algebra A = jbstar::build_direct_sum({H2, H2});
  const std::vector<Element> parts = {H2.unit(), -H2.unit()};
  const Element s = A.from_components(parts);
  const Algebra P = jbstar::peirce2_algebra(A, s);
  ASSERT_EQ(P.dim(), A.dim());
  for (int k = 0; k < 100; ++k) {
    const Element a = jbstar::random_element(A, 1000 + k, Flavor::General);
    EXPECT_NEAR(P.norm(P.restrict(a)), A.norm(a), 1e-10);
  }
}

TEST(Kaup, Examples) {
  const Algebra H3 = jbstar::build_hermitian_matrix_algebra(3);
  const Algebra S3 = jbstar::build_spin_factor(3);
  const auto unit = jbstar::kaup_identity_check(H3, H3.unit(), 50, 1);
  EXPECT_TRUE(unit.passed);
  EXPECT_LT(unit.max_residual, 1e-12);
  EXPECT_TRUE(jbstar::kaup_identity_check(H3, diag(H3, {1, 1, 0}), 50, 2).passed);
  EXPECT_TRUE(jbstar::kaup_identity_check(S3, S3.unit(), 50, 3).passed);
}

TEST(Kaup, RandomTripotents) {
  for (const auto& A : models())
    for (int k = 0; k < 5; ++k) {
      const auto r = jbstar::kaup_identity_check(A, jbstar::random_tripotent(A, 1200 + k), 40, k);
      EXPECT_TRUE(r.passed) << A.describe() << " residual " << r.max_residual;
    }
}

}  // namespace
