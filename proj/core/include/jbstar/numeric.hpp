#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace jbstar {

using Complex = std::complex<double>;

/// Numerical tolerance policy shared by every module.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;
  double cluster_eps = 1e-7;  // eigenvalue / root merging radius

  /// All fields strictly positive and below 1e-2.
  bool valid() const noexcept;
  /// |x - y| <= abs_eps + rel_eps * max(|x|, |y|)
  bool close(double x, double y) const noexcept;
};

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix column_vector(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  std::vector<Complex> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> v);
  ComplexMatrix columns(std::size_t first, std::size_t count) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column j pairs with values[j]
};

/// Cyclic Jacobi eigensolver. Throws NotHermitian / NoConvergence.
HermitianEigen hermitian_eig(const ComplexMatrix& m, const Tolerance& tol = {});

/// Largest singular value, as the square root of the top eigenvalue of m†m.
double operator_norm(const ComplexMatrix& m);

struct Svd {
  ComplexMatrix u;            // rows x k, orthonormal columns
  std::vector<double> sigma;  // descending, k = min(rows, cols)
  ComplexMatrix v;            // cols x k, orthonormal columns
};

/// Thin SVD by one-sided (Hestenes) Jacobi.
Svd svd(const ComplexMatrix& m);

/// All complex roots of a polynomial with ascending coefficients, computed as
/// eigenvalues of its companion matrix (shifted Hessenberg QR) and polished by
/// Newton steps. Throws DegenerateInput when every coefficient vanishes.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Eigenvalues of an upper Hessenberg matrix (unordered).
std::vector<Complex> hessenberg_eigenvalues(const ComplexMatrix& h);

/// Sorted distinct real roots; near-equal roots are merged to their mean.
std::vector<double> real_roots(std::span<const double> coeffs, const Tolerance& tol = {});

Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex x) noexcept;

struct LeastSquares {
  ComplexMatrix solution;
  double residual = 0.0;  // Frobenius norm of a*x - b
};

/// Minimises ‖a x − b‖_F. Throws RankDeficient when σ_min(a) < abs_eps·‖a‖.
LeastSquares solve_least_squares(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const Tolerance& tol = {});

/// Orthonormal basis of the column space; singular values below
/// rel_threshold·σ_max are discarded.
ComplexMatrix column_space(const ComplexMatrix& m, double rel_threshold);

/// Orthonormal basis of the null space (right singular vectors with
/// σ <= rel_threshold·max(σ_max, 1)).
ComplexMatrix null_space(const ComplexMatrix& m, double rel_threshold);

double vector_norm(std::span<const Complex> v) noexcept;
Complex inner(std::span<const Complex> x, std::span<const Complex> y) noexcept;  // Σ conj(x)·y

}  // namespace jbstar
