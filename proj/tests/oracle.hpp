#pragma once

// Independent reference computations for the tests. Everything here goes
// through Eigen and plain associative matrix arithmetic, never through the
// library's own Jordan machinery.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "jbstar/algebra.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat from_coords(std::span<const Complex> c, std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c[i * n + j];
  return m;
}

inline Mat to_mat(const jbstar::Algebra& a, const jbstar::Element& x) {
  return from_coords(x.coords(), a.order());
}

inline jbstar::Element to_element(const jbstar::Algebra& a, const Mat& m) {
  const auto n = static_cast<Eigen::Index>(a.order());
  std::vector<Complex> c(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c[static_cast<std::size_t>(i * n + j)] = m(i, j);
  return a.element(std::move(c));
}

inline Mat from_matrix(const jbstar::ComplexMatrix& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline double opnorm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline Mat jordan(const Mat& a, const Mat& b) { return 0.5 * (a * b + b * a); }

inline std::vector<double> eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

// Distinct eigenvalues, merging values within `radius`.
inline std::vector<double> distinct(std::vector<double> v, double radius) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > radius) out.push_back(x);
  return out;
}

inline Mat random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

inline Mat random_unitary(std::size_t n, std::mt19937_64& rng) {
  const Mat h = random_hermitian(n, rng);
  return (Complex(0.0, 1.0) * h).exp();
}

// Spin factor arithmetic written out directly from the defining formulas.
struct Spin {
  static std::vector<Complex> product(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    std::vector<Complex> out(x.size());
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[0] * y[i] + y[0] * x[i];
    out[0] -= s;
    return out;
  }
  // Self-adjoint λ1 + h with h = i·t: ‖·‖ = |λ| + ‖t‖₂.
  static double sa_norm(double lambda, const std::vector<double>& t) {
    double s = 0.0;
    for (double v : t) s += v * v;
    return std::abs(lambda) + std::sqrt(s);
  }
};

}  // namespace oracle
