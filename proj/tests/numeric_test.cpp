#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jbstar/error.hpp"
#include "jbstar/numeric.hpp"
#include "oracle.hpp"

namespace {

using jbstar::Complex;
using jbstar::ComplexMatrix;

constexpr int kIterations = 200;

ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix m = random_matrix(n, n, rng);
  return (m + m.adjoint()) * Complex(0.5);
}

TEST(HermitianEig, IdentityHasUnitEigenvalues) {
  const auto e = jbstar::hermitian_eig(ComplexMatrix::identity(3));
  ASSERT_EQ(e.values.size(), 3u);
  for (double v : e.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(HermitianEig, DiagonalSortedAscending) {
  const auto e = jbstar::hermitian_eig({{2.0, 0.0}, {0.0, -1.0}});
  EXPECT_NEAR(e.values[0], -1.0, 1e-12);
  EXPECT_NEAR(e.values[1], 2.0, 1e-12);
}

TEST(HermitianEig, PauliX) {
  const auto e = jbstar::hermitian_eig({{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(e.values[0], -1.0, 1e-12);
  EXPECT_NEAR(e.values[1], 1.0, 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  try {
    jbstar::hermitian_eig({{0.0, 1.0}, {0.0, 0.0}});
    FAIL() << "expected NotHermitian";
  } catch (const jbstar::Error& e) {
    EXPECT_EQ(e.kind(), jbstar::ErrorKind::NotHermitian);
  }
}

TEST(HermitianEig, ReconstructionProperty) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < kIterations; ++it) {
    const std::size_t n = 1 + it % 8;
    const ComplexMatrix m = random_hermitian(n, rng);
    const auto e = jbstar::hermitian_eig(m);
    std::vector<Complex> lam(e.values.begin(), e.values.end());
    const ComplexMatrix recon = e.vectors * ComplexMatrix::diagonal(lam) * e.vectors.adjoint();
    const double scale = 1.0 + jbstar::operator_norm(m);
    EXPECT_LE(jbstar::operator_norm(m - recon), 1e-8 * scale);
    EXPECT_LE(jbstar::operator_norm(e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(n)), 1e-9);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    const auto ref = oracle::eigenvalues(oracle::from_matrix(m));
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(e.values[k], ref[k], 1e-9 * scale);
  }
}

TEST(OperatorNorm, Examples) {
  EXPECT_EQ(jbstar::operator_norm(ComplexMatrix(3, 3)), 0.0);
  EXPECT_NEAR(jbstar::operator_norm(ComplexMatrix::identity(4)), 1.0, 1e-12);
  EXPECT_NEAR(jbstar::operator_norm({{3.0, 0.0}, {0.0, -4.0}}), 4.0, 1e-12);
}

TEST(OperatorNorm, SubadditiveAndSubmultiplicative) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < kIterations; ++it) {
    const std::size_t n = 1 + it % 7;
    const auto m = random_matrix(n, n, rng);
    const auto w = random_matrix(n, n, rng);
    const double nm = jbstar::operator_norm(m), nw = jbstar::operator_norm(w);
    EXPECT_LE(jbstar::operator_norm(m * w), nm * nw + 1e-9);
    EXPECT_LE(jbstar::operator_norm(m + w), nm + nw + 1e-9);
    EXPECT_NEAR(nm, oracle::opnorm(oracle::from_matrix(m)), 1e-9 * (1.0 + nm));
  }
}

TEST(RealRoots, Examples) {
  const std::vector<double> linear{-5.0, 1.0};
  const auto r1 = jbstar::real_roots(linear);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1[0], 5.0, 1e-12);

  const std::vector<double> quad{2.0, -3.0, 1.0};
  const auto r2 = jbstar::real_roots(quad);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0], 1.0, 1e-12);
  EXPECT_NEAR(r2[1], 2.0, 1e-12);

  const std::vector<double> none{1.0, 0.0, 1.0};
  EXPECT_TRUE(jbstar::real_roots(none).empty());
}

TEST(RealRoots, DegenerateInput) {
  const std::vector<double> zero{0.0, 1e-12};
  EXPECT_THROW(jbstar::real_roots(zero), jbstar::Error);
}

TEST(RealRoots, RecoversKnownFactors) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int it = 0; it < kIterations; ++it) {
    const std::size_t deg = 1 + it % 6;
    std::vector<double> roots;
    while (roots.size() < deg) {
      const double r = u(rng);
      if (std::all_of(roots.begin(), roots.end(), [&](double x) { return std::abs(x - r) > 0.2; }))
        roots.push_back(r);
    }
    std::vector<double> poly{1.0};
    for (double r : roots) {
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] -= r * poly[k];
        next[k + 1] += poly[k];
      }
      poly = next;
    }
    std::sort(roots.begin(), roots.end());
    const auto got = jbstar::real_roots(poly);
    ASSERT_EQ(got.size(), roots.size());
    for (std::size_t k = 0; k < deg; ++k) EXPECT_NEAR(got[k], roots[k], 1e-7);
  }
}

TEST(RealRoots, MergesNearlyEqualRoots) {
  // (x-1)(x-1-1e-9)
  const double d = 1e-9;
  const std::vector<double> p{1.0 + d, -(2.0 + d), 1.0};
  const auto r = jbstar::real_roots(p);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1.0, 1e-7);
}

TEST(LeastSquares, Examples) {
  const auto b = ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}};
  const auto x = jbstar::solve_least_squares(ComplexMatrix::identity(2), b);
  EXPECT_LE((x.solution - b).frobenius_norm(), 1e-12);

  const auto dup = ComplexMatrix{{1.0, 2.0}, {3.0, 4.0}, {1.0, 2.0}, {3.0, 4.0}};
  const auto rhs = ComplexMatrix{{5.0}, {11.0}, {5.0}, {11.0}};
  const auto y = jbstar::solve_least_squares(dup, rhs);
  EXPECT_NEAR(std::abs(y.solution(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(y.solution(1, 0) - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(y.residual, 0.0, 1e-12);

  const auto z = jbstar::solve_least_squares(ComplexMatrix{{1.0}, {1.0}}, ComplexMatrix{{0.0}, {2.0}});
  EXPECT_NEAR(std::abs(z.solution(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(z.residual, std::sqrt(2.0), 1e-12);
}

TEST(LeastSquares, RankDeficient) {
  try {
    jbstar::solve_least_squares(ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}, {2.0, 2.0}}, ComplexMatrix(3, 1));
    FAIL();
  } catch (const jbstar::Error& e) {
    EXPECT_EQ(e.kind(), jbstar::ErrorKind::RankDeficient);
  }
}

TEST(Svd, MatchesEigenOracle) {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 50; ++it) {
    const std::size_t r = 1 + it % 6, c = 1 + (it / 6) % 6;
    const auto m = random_matrix(r, c, rng);
    const auto s = jbstar::svd(m);
    Eigen::JacobiSVD<oracle::Mat> ref(oracle::from_matrix(m));
    for (std::size_t k = 0; k < s.sigma.size(); ++k)
      EXPECT_NEAR(s.sigma[k], ref.singularValues()(static_cast<Eigen::Index>(k)), 1e-10);
    std::vector<Complex> sig(s.sigma.begin(), s.sigma.end());
    EXPECT_LE((s.u * ComplexMatrix::diagonal(sig) * s.v.adjoint() - m).frobenius_norm(), 1e-10);
  }
}

TEST(PolynomialRoots, ComplexRootsOnCircle) {
  // x^5 - 1
  const std::vector<Complex> p{-1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  const auto r = jbstar::polynomial_roots(p);
  ASSERT_EQ(r.size(), 5u);
  for (const auto& z : r) {
    EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(std::pow(z, 5) - 1.0), 0.0, 1e-11);
  }
}

TEST(Hessenberg, EigenvaluesOfTriangular) {
  const ComplexMatrix h{{1.0, 2.0, 3.0}, {0.0, 4.0, 5.0}, {0.0, 0.0, 6.0}};
  auto ev = jbstar::hessenberg_eigenvalues(h);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  EXPECT_NEAR(ev[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(ev[1].real(), 4.0, 1e-12);
  EXPECT_NEAR(ev[2].real(), 6.0, 1e-12);
}

TEST(Tolerance, Validity) {
  EXPECT_TRUE(jbstar::Tolerance{}.valid());
  EXPECT_FALSE((jbstar::Tolerance{0.0, 1e-9, 1e-7}.valid()));
  EXPECT_FALSE((jbstar::Tolerance{1e-9, 1e-9, 0.5}.valid()));
  EXPECT_TRUE(jbstar::Tolerance{}.close(1.0, 1.0 + 1e-10));
  EXPECT_FALSE(jbstar::Tolerance{}.close(1.0, 1.0 + 1e-6));
}

}  // namespace
