#include "jbstar/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "jbstar/error.hpp"

namespace jbstar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DegenerateInput, std::string("shape mismatch in ") + op);
  }
}

}  // namespace

bool Tolerance::valid() const noexcept {
  auto ok = [](double x) { return x > 0.0 && x < 1e-2; };
  return ok(abs_eps) && ok(rel_eps) && ok(cluster_eps);
}

bool Tolerance::close(double x, double y) const noexcept {
  return std::abs(x - y) <= abs_eps + rel_eps * std::max(std::abs(x), std::abs(y));
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DegenerateInput, "entries length must equal rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DegenerateInput, "ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::column_vector(std::span<const Complex> v) {
  return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const Complex> v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

ComplexMatrix ComplexMatrix::columns(std::size_t first, std::size_t count) const {
  ComplexMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const noexcept { return vector_norm(entries_); }

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DegenerateInput, "shape mismatch in *");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = &b.entries_[k * b.cols_];
      Complex* orow = &out.entries_[i * out.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DegenerateInput, "shape mismatch in apply");
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

double vector_norm(std::span<const Complex> v) noexcept {
  // scaled accumulation avoids overflow for large entries
  double scale = 0.0;
  for (const auto& z : v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z / scale);
  return scale * std::sqrt(acc);
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) noexcept {
  Complex acc{};
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic Jacobi)

HermitianEigen hermitian_eig(const ComplexMatrix& m, const Tolerance& tol) {
  if (!m.is_square()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  if (!m.all_finite()) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const std::size_t n = m.rows();
  const double mnorm = m.frobenius_norm();
  const double skew = (m - m.adjoint()).frobenius_norm();
  if (skew > tol.abs_eps * (1.0 + mnorm)) {
    throw Error(ErrorKind::NotHermitian, "‖m − m†‖ = " + std::to_string(skew));
  }

  ComplexMatrix a = (m + m.adjoint()) * Complex(0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) acc += std::norm(a(p, q));
    return std::sqrt(acc);
  };

  const double target = static_cast<double>(n) * kEps * a.frobenius_norm();
  const std::size_t max_sweeps = std::max<std::size_t>(100 * n * n, 1);
  std::size_t sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase = apq / g;  // e^{iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = [[c, s e^{iφ}], [−s e^{−iφ}, c]] on the (p,q) plane; a ← G† a G
        const Complex sp = s * phase;
        const Complex sm = s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c - akq * sm;
          a(k, q) = akp * sp + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = sm * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c - vkq * sm;
          v(k, q) = vkp * sp + vkq * c;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_norm() > target) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  const ComplexMatrix g = m.cols() <= m.rows() ? m.adjoint() * m : m * m.adjoint();
  const double scale = g.max_abs();
  if (scale == 0.0) return 0.0;
  // Gram matrices are hermitian up to roundoff; symmetrise before the solve.
  const ComplexMatrix h = (g + g.adjoint()) * Complex(0.5 / scale);
  const auto eig = hermitian_eig(h);
  return std::sqrt(std::max(0.0, eig.values.back()) * scale);
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD

Svd svd(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    Svd t = svd(m.adjoint());
    return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  ComplexMatrix w = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto col_dot = [&](std::size_t p, std::size_t q) {
    Complex acc{};
    for (std::size_t r = 0; r < rows; ++r) acc += std::conj(w(r, p)) * w(r, q);
    return acc;
  };

  constexpr int kMaxSweeps = 80;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = col_dot(p, p).real();
        const double beta = col_dot(q, q).real();
        const Complex gamma = col_dot(p, q);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;  // e^{−iφ}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const Complex wp = w(r, p);
          const Complex wq = phase * w(r, q);
          w(r, p) = c * wp - s * wq;
          w(r, q) = s * wp + c * wq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vp = v(r, p);
          const Complex vq = phase * v(r, q);
          v(r, p) = c * vp - s * vq;
          v(r, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) sig[j] = std::sqrt(std::max(0.0, col_dot(j, j).real()));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  Svd out{ComplexMatrix(rows, n), std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sig[src];
    for (std::size_t r = 0; r < rows; ++r)
      out.u(r, j) = sig[src] > 0.0 ? w(r, src) / sig[src] : Complex{};
    for (std::size_t r = 0; r < n; ++r) out.v(r, j) = v(r, src);
  }
  return out;
}

LeastSquares solve_least_squares(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const Tolerance& tol) {
  if (a.rows() < a.cols()) {
    throw Error(ErrorKind::RankDeficient, "least squares needs rows >= cols");
  }
  if (b.rows() != a.rows()) throw Error(ErrorKind::DegenerateInput, "rhs row count mismatch");
  const Svd s = svd(a);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double smin = s.sigma.empty() ? 0.0 : s.sigma.back();
  if (s.sigma.empty() || smax == 0.0 || smin < tol.abs_eps * smax) {
    throw Error(ErrorKind::RankDeficient,
                "σ_min/σ_max = " + std::to_string(smax == 0.0 ? 0.0 : smin / smax));
  }
  ComplexMatrix ub = s.u.adjoint() * b;
  for (std::size_t i = 0; i < ub.rows(); ++i)
    for (std::size_t j = 0; j < ub.cols(); ++j) ub(i, j) /= s.sigma[i];
  LeastSquares out;
  out.solution = s.v * ub;
  out.residual = (a * out.solution - b).frobenius_norm();
  return out;
}

ComplexMatrix column_space(const ComplexMatrix& m, double rel_threshold) {
  const Svd s = svd(m);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  std::size_t rank = 0;
  while (rank < s.sigma.size() && smax > 0.0 && s.sigma[rank] > rel_threshold * smax) ++rank;
  return s.u.columns(0, rank);
}

ComplexMatrix null_space(const ComplexMatrix& m, double rel_threshold) {
  ComplexMatrix work = m;
  if (m.rows() < m.cols()) {
    work = ComplexMatrix(m.cols(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) work(r, c) = m(r, c);
  }
  const Svd s = svd(work);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double cut = rel_threshold * std::max(smax, 1.0);
  std::size_t first = 0;
  while (first < s.sigma.size() && s.sigma[first] > cut) ++first;
  return s.v.columns(first, s.sigma.size() - first);
}

// ---------------------------------------------------------------------------
// Polynomial roots via the companion matrix

Complex evaluate_polynomial(std::span<const Complex> coeffs, Complex x) noexcept {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

namespace {

Complex evaluate_derivative(std::span<const Complex> coeffs, Complex x) noexcept {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

// Single-shift complex QR on an upper Hessenberg matrix.
std::vector<Complex> hessenberg_qr(ComplexMatrix h) {
  const std::size_t n = h.rows();
  std::vector<Complex> eig;
  eig.reserve(n);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  int total = 0;
  const int budget = 100 * static_cast<int>(std::max<std::size_t>(n, 1));
  std::vector<std::pair<double, Complex>> rot;
  while (hi >= 0) {
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (sub <= kEps * (diag == 0.0 ? 1.0 : diag)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (++total > budget) throw Error(ErrorKind::NoConvergence, "Hessenberg QR did not converge");
    ++iter;

    Complex mu;
    if (iter % 11 == 0) {
      mu = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.4 * std::abs(h(hi, hi - 1)));
    } else {
      const Complex a = h(hi - 1, hi - 1);
      const Complex b = h(hi - 1, hi);
      const Complex c = h(hi, hi - 1);
      const Complex d = h(hi, hi);
      const Complex half_tr = 0.5 * (a + d);
      const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const Complex mu1 = half_tr + disc;
      const Complex mu2 = half_tr - disc;
      mu = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    }

    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    rot.clear();
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Complex x = h(k, k);
      const Complex y = h(k + 1, k);
      const double ax = std::abs(x);
      const double r = std::hypot(ax, std::abs(y));
      double c = 1.0;
      Complex s{};
      if (r != 0.0) {
        if (ax == 0.0) {
          c = 0.0;
          s = 1.0;
        } else {
          c = ax / r;
          s = (x / ax) * std::conj(y) / r;
        }
      }
      rot.emplace_back(c, s);
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const Complex u = h(k, j);
        const Complex v = h(k + 1, j);
        h(k, j) = c * u + s * v;
        h(k + 1, j) = -std::conj(s) * u + c * v;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const auto [c, s] = rot[static_cast<std::size_t>(k - lo)];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= last; ++i) {
        const Complex u = h(i, k);
        const Complex v = h(i, k + 1);
        h(i, k) = u * c + v * std::conj(s);
        h(i, k + 1) = -u * s + v * c;
      }
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

}  // namespace

std::vector<Complex> hessenberg_eigenvalues(const ComplexMatrix& h) {
  if (!h.is_square()) throw Error(ErrorKind::DegenerateInput, "Hessenberg matrix must be square");
  for (std::size_t i = 2; i < h.rows(); ++i)
    for (std::size_t j = 0; j + 1 < i; ++j)
      if (h(i, j) != Complex{}) throw Error(ErrorKind::DegenerateInput, "matrix is not upper Hessenberg");
  return hessenberg_qr(h);
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0 || !std::isfinite(cmax)) {
    throw Error(ErrorKind::DegenerateInput, "polynomial has no nonzero finite coefficient");
  }
  std::size_t degree = coeffs.size() - 1;
  while (degree > 0 && std::abs(coeffs[degree]) <= 1e-14 * cmax) --degree;
  if (degree == 0) return {};

  const Complex lead = coeffs[degree];
  ComplexMatrix comp(degree, degree);
  for (std::size_t j = 0; j < degree; ++j) comp(0, j) = -coeffs[degree - 1 - j] / lead;
  for (std::size_t i = 1; i < degree; ++i) comp(i, i - 1) = 1.0;

  std::vector<Complex> roots = hessenberg_qr(std::move(comp));
  const auto poly = coeffs.first(degree + 1);
  for (auto& z : roots) {
    for (int it = 0; it < 4; ++it) {
      const Complex pz = evaluate_polynomial(poly, z);
      const Complex dz = evaluate_derivative(poly, z);
      if (dz == Complex{}) break;
      const Complex next = z - pz / dz;
      if (std::abs(evaluate_polynomial(poly, next)) >= std::abs(pz)) break;
      z = next;
    }
  }
  return roots;
}

std::vector<double> real_roots(std::span<const double> coeffs, const Tolerance& tol) {
  if (coeffs.empty() ||
      std::all_of(coeffs.begin(), coeffs.end(), [&](double c) { return std::abs(c) < tol.abs_eps; })) {
    throw Error(ErrorKind::DegenerateInput, "all coefficients below abs_eps");
  }
  std::vector<Complex> cc(coeffs.begin(), coeffs.end());
  std::vector<double> out;
  for (const auto& z : polynomial_roots(cc)) {
    if (std::abs(z.imag()) <= tol.cluster_eps * (1.0 + std::abs(z))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) return out;

  double span_max = 0.0;
  for (double r : out) span_max = std::max(span_max, std::abs(r));
  const double radius = tol.cluster_eps * (1.0 + span_max);
  std::vector<double> merged;
  std::size_t i = 0;
  while (i < out.size()) {
    std::size_t j = i + 1;
    double sum = out[i];
    while (j < out.size() && out[j] - out[j - 1] <= radius) sum += out[j++];
    merged.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return merged;
}

}  // namespace jbstar
