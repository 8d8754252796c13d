#include "jbstar/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "jbstar/error.hpp"

namespace jbstar {

namespace {

std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorKind::AlgebraMismatch, what); }

}  // namespace

// ---------------------------------------------------------------- Element

Element::Element(std::uint64_t algebra_id, std::vector<Complex> coords)
    : algebra_id_(algebra_id), coords_(std::move(coords)) {}

Element& Element::operator+=(const Element& o) {
  if (algebra_id_ != o.algebra_id_ || coords_.size() != o.coords_.size())
    mismatch("adding elements of different algebras");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (algebra_id_ != o.algebra_id_ || coords_.size() != o.coords_.size())
    mismatch("subtracting elements of different algebras");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

std::string_view to_string(AlgebraKind kind) noexcept {
  switch (kind) {
    case AlgebraKind::HermitianMatrix: return "hermitian_matrix";
    case AlgebraKind::Spin: return "spin";
    case AlgebraKind::DirectSum: return "direct_sum";
    case AlgebraKind::Peirce2: return "peirce2";
  }
  return "unknown";
}

std::string_view to_string(Flavor flavor) noexcept {
  switch (flavor) {
    case Flavor::General: return "general";
    case Flavor::SelfAdjoint: return "self_adjoint";
    case Flavor::Positive: return "positive";
    case Flavor::Projection: return "projection";
    case Flavor::Unitary: return "unitary";
  }
  return "unknown";
}

// ---------------------------------------------------------------- models

namespace detail {

using Coords = std::vector<Complex>;

class Model {
 public:
  Model(AlgebraKind kind, std::size_t dim, const Tolerance& tol)
      : kind_(kind), dim_(dim), id_(next_id()), tol_(tol) {}
  virtual ~Model() = default;

  AlgebraKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t id() const noexcept { return id_; }
  const Tolerance& tol() const noexcept { return tol_; }
  const Element& unit() const noexcept { return unit_; }

  virtual Coords product(std::span<const Complex> a, std::span<const Complex> b) const = 0;
  virtual Coords involution(std::span<const Complex> a) const = 0;
  virtual double norm(std::span<const Complex> a) const = 0;
  virtual std::string describe() const = 0;
  virtual std::shared_ptr<Model> with_tolerance(const Tolerance& tol) const = 0;

 protected:
  void set_unit(Coords c) { unit_ = Element(id_, std::move(c)); }

 private:
  AlgebraKind kind_;
  std::size_t dim_;
  std::uint64_t id_;
  Tolerance tol_;
  Element unit_;
};

class HermitianModel final : public Model {
 public:
  HermitianModel(std::size_t n, const Tolerance& tol)
      : Model(AlgebraKind::HermitianMatrix, n * n, tol), n_(n) {
    Coords u(n * n);
    for (std::size_t i = 0; i < n; ++i) u[i * n + i] = 1.0;
    set_unit(std::move(u));
  }

  std::size_t n() const noexcept { return n_; }

  ComplexMatrix matrix(std::span<const Complex> c) const {
    return ComplexMatrix(n_, n_, Coords(c.begin(), c.end()));
  }

  Coords product(std::span<const Complex> a, std::span<const Complex> b) const override {
    const ComplexMatrix ma = matrix(a), mb = matrix(b);
    ComplexMatrix ab = ma * mb;
    const ComplexMatrix ba = mb * ma;
    ab += ba;
    ab *= 0.5;
    return Coords(ab.entries().begin(), ab.entries().end());
  }

  Coords involution(std::span<const Complex> a) const override {
    Coords out(a.size());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[j * n_ + i] = std::conj(a[i * n_ + j]);
    return out;
  }

  double norm(std::span<const Complex> a) const override { return operator_norm(matrix(a)); }

  std::string describe() const override { return "hermitian_matrix(" + std::to_string(n_) + ")"; }

  std::shared_ptr<Model> with_tolerance(const Tolerance& tol) const override {
    return std::make_shared<HermitianModel>(n_, tol);
  }

 private:
  std::size_t n_;
};

class SpinModel final : public Model {
 public:
  SpinModel(std::size_t n, const Tolerance& tol) : Model(AlgebraKind::Spin, n, tol), n_(n) {
    Coords u(n);
    u[0] = 1.0;
    set_unit(std::move(u));
  }

  std::size_t n() const noexcept { return n_; }

  Coords product(std::span<const Complex> x, std::span<const Complex> y) const override {
    Coords out(n_);
    Complex xy{};
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = x[0] * y[i] + y[0] * x[i];
      xy += x[i] * y[i];
    }
    out[0] -= xy;
    return out;
  }

  Coords involution(std::span<const Complex> x) const override {
    Coords out(n_);
    out[0] = std::conj(x[0]);
    for (std::size_t i = 1; i < n_; ++i) out[i] = -std::conj(x[i]);
    return out;
  }

  double norm(std::span<const Complex> x) const override {
    double l2 = 0.0;
    Complex q{};
    for (std::size_t i = 0; i < n_; ++i) {
      l2 += std::norm(x[i]);
      q += x[i] * x[i];
    }
    const double disc = std::max(0.0, l2 * l2 - std::norm(q));
    return std::sqrt(l2 + std::sqrt(disc));
  }

  std::string describe() const override { return "spin(" + std::to_string(n_) + ")"; }

  std::shared_ptr<Model> with_tolerance(const Tolerance& tol) const override {
    return std::make_shared<SpinModel>(n_, tol);
  }

 private:
  std::size_t n_;
};

class DirectSumModel final : public Model {
 public:
  DirectSumModel(std::vector<Algebra> parts, std::size_t dim, const Tolerance& tol)
      : Model(AlgebraKind::DirectSum, dim, tol), parts_(std::move(parts)) {
    std::size_t off = 0;
    Coords u;
    for (const auto& p : parts_) {
      offsets_.push_back(off);
      off += p.dim();
      u.insert(u.end(), p.unit().coords().begin(), p.unit().coords().end());
    }
    set_unit(std::move(u));
  }

  const std::vector<Algebra>& parts() const noexcept { return parts_; }
  std::size_t offset(std::size_t k) const { return offsets_.at(k); }

  Element slice(std::span<const Complex> c, std::size_t k) const {
    const auto& p = parts_[k];
    return p.element(Coords(c.begin() + offsets_[k], c.begin() + offsets_[k] + p.dim()));
  }

  Coords product(std::span<const Complex> a, std::span<const Complex> b) const override {
    Coords out;
    out.reserve(dim());
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      const Element r = parts_[k].product(slice(a, k), slice(b, k));
      out.insert(out.end(), r.coords().begin(), r.coords().end());
    }
    return out;
  }

  Coords involution(std::span<const Complex> a) const override {
    Coords out;
    out.reserve(dim());
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      const Element r = parts_[k].involution(slice(a, k));
      out.insert(out.end(), r.coords().begin(), r.coords().end());
    }
    return out;
  }

  double norm(std::span<const Complex> a) const override {
    double m = 0.0;
    for (std::size_t k = 0; k < parts_.size(); ++k) m = std::max(m, parts_[k].norm(slice(a, k)));
    return m;
  }

  std::string describe() const override {
    std::string s = "direct_sum(";
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (k) s += ", ";
      s += parts_[k].describe();
    }
    return s + ")";
  }

  std::shared_ptr<Model> with_tolerance(const Tolerance& tol) const override {
    std::vector<Algebra> parts;
    for (const auto& p : parts_) parts.push_back(p.with_tolerance(tol));
    return std::make_shared<DirectSumModel>(std::move(parts), dim(), tol);
  }

 private:
  std::vector<Algebra> parts_;
  std::vector<std::size_t> offsets_;
};

class Peirce2Model final : public Model {
 public:
  Peirce2Model(Algebra ambient, Element e, ComplexMatrix basis, const Tolerance& tol)
      : Model(AlgebraKind::Peirce2, basis.cols(), tol),
        ambient_(std::move(ambient)),
        e_(std::move(e)),
        e_star_(ambient_.involution(e_)),
        basis_(std::move(basis)),
        basis_adj_(basis_.adjoint()) {
    set_unit(restrict_coords(e_.coords()));
  }

  const Algebra& ambient() const noexcept { return ambient_; }
  const Element& tripotent() const noexcept { return e_; }

  Coords restrict_coords(std::span<const Complex> y) const { return basis_adj_.apply(y); }
  Element embed(std::span<const Complex> x) const { return ambient_.element(basis_.apply(x)); }

  // {x, y, z} with y* supplied
  Element triple(const Element& x, const Element& ystar, const Element& z) const {
    const Algebra& A = ambient_;
    return A.product(A.product(x, ystar), z) + A.product(A.product(z, ystar), x) -
           A.product(A.product(x, z), ystar);
  }

  Coords product(std::span<const Complex> a, std::span<const Complex> b) const override {
    return restrict_coords(triple(embed(a), e_star_, embed(b)).coords());
  }

  Coords involution(std::span<const Complex> a) const override {
    const Element x = embed(a);
    return restrict_coords(triple(e_, ambient_.involution(x), e_).coords());
  }

  double norm(std::span<const Complex> a) const override { return ambient_.norm(embed(a)); }

  std::string describe() const override {
    return "peirce2(" + ambient_.describe() + ", rank " + std::to_string(dim()) + ")";
  }

  std::shared_ptr<Model> with_tolerance(const Tolerance& tol) const override {
    return std::make_shared<Peirce2Model>(ambient_, e_, basis_, tol);
  }

 private:
  Algebra ambient_;
  Element e_;
  Element e_star_;
  ComplexMatrix basis_;
  ComplexMatrix basis_adj_;
};

}  // namespace detail

// ---------------------------------------------------------------- Algebra

namespace {

template <class M>
const M& as(const detail::Model& m, const char* what) {
  const auto* p = dynamic_cast<const M*>(&m);
  if (!p) throw Error(ErrorKind::PreconditionFailed, std::string(what) + " not available for this algebra kind");
  return *p;
}

}  // namespace

const detail::Model& Algebra::model() const {
  if (!model_) throw Error(ErrorKind::PreconditionFailed, "empty algebra handle");
  return *model_;
}

AlgebraKind Algebra::kind() const { return model().kind(); }
std::size_t Algebra::dim() const { return model().dim(); }
std::uint64_t Algebra::id() const { return model().id(); }
const Tolerance& Algebra::tol() const { return model().tol(); }
std::string Algebra::describe() const { return model().describe(); }
const Element& Algebra::unit() const { return model().unit(); }

Element Algebra::zero() const { return Element(id(), std::vector<Complex>(dim())); }

Element Algebra::basis(std::size_t k) const {
  if (k >= dim()) throw Error(ErrorKind::SizeOutOfRange, "basis index out of range");
  std::vector<Complex> c(dim());
  c[k] = 1.0;
  return Element(id(), std::move(c));
}

Element Algebra::scalar(Complex lambda) const { return unit() * lambda; }

Element Algebra::element(std::vector<Complex> coords) const {
  if (coords.size() != dim())
    mismatch("expected " + std::to_string(dim()) + " coordinates, got " + std::to_string(coords.size()));
  for (const auto& c : coords)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) mismatch("non-finite coordinate");
  return Element(id(), std::move(coords));
}

bool Algebra::owns(const Element& x) const noexcept {
  return model_ && x.algebra_id() == model_->id() && x.size() == model_->dim();
}

void Algebra::check(const Element& x) const {
  if (!owns(x)) mismatch("element does not belong to " + describe());
}

Element Algebra::product(const Element& a, const Element& b) const {
  check(a);
  check(b);
  return Element(id(), model().product(a.coords(), b.coords()));
}

Element Algebra::involution(const Element& a) const {
  check(a);
  return Element(id(), model().involution(a.coords()));
}

double Algebra::norm(const Element& a) const {
  check(a);
  return model().norm(a.coords());
}

double Algebra::distance(const Element& x, const Element& y) const { return norm(x - y); }

Algebra Algebra::with_tolerance(const Tolerance& tol) const {
  if (!tol.valid()) throw Error(ErrorKind::ParamOutOfRange, "invalid tolerance");
  return Algebra(model().with_tolerance(tol));
}

std::size_t Algebra::order() const {
  if (const auto* h = dynamic_cast<const detail::HermitianModel*>(&model())) return h->n();
  return as<detail::SpinModel>(model(), "order").n();
}

ComplexMatrix Algebra::to_matrix(const Element& x) const {
  check(x);
  return as<detail::HermitianModel>(model(), "to_matrix").matrix(x.coords());
}

Element Algebra::from_matrix(const ComplexMatrix& m) const {
  const auto& h = as<detail::HermitianModel>(model(), "from_matrix");
  if (m.rows() != h.n() || m.cols() != h.n()) mismatch("matrix has wrong order");
  return element(std::vector<Complex>(m.entries().begin(), m.entries().end()));
}

const std::vector<Algebra>& Algebra::parts() const {
  return as<detail::DirectSumModel>(model(), "parts").parts();
}

std::size_t Algebra::part_offset(std::size_t k) const {
  return as<detail::DirectSumModel>(model(), "part_offset").offset(k);
}

Element Algebra::component(const Element& x, std::size_t k) const {
  check(x);
  const auto& ds = as<detail::DirectSumModel>(model(), "component");
  if (k >= ds.parts().size()) throw Error(ErrorKind::SizeOutOfRange, "component index");
  return ds.slice(x.coords(), k);
}

Element Algebra::from_components(std::span<const Element> comps) const {
  const auto& ds = as<detail::DirectSumModel>(model(), "from_components");
  if (comps.size() != ds.parts().size()) mismatch("wrong number of components");
  std::vector<Complex> c;
  c.reserve(dim());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    ds.parts()[k].check(comps[k]);
    c.insert(c.end(), comps[k].coords().begin(), comps[k].coords().end());
  }
  return Element(id(), std::move(c));
}

const Algebra& Algebra::ambient() const { return as<detail::Peirce2Model>(model(), "ambient").ambient(); }

const Element& Algebra::peirce_tripotent() const {
  return as<detail::Peirce2Model>(model(), "peirce_tripotent").tripotent();
}

Element Algebra::embed(const Element& x) const {
  check(x);
  return as<detail::Peirce2Model>(model(), "embed").embed(x.coords());
}

Element Algebra::restrict(const Element& y) const {
  const auto& p = as<detail::Peirce2Model>(model(), "restrict");
  p.ambient().check(y);
  return Element(id(), p.restrict_coords(y.coords()));
}

// ---------------------------------------------------------------- builders

Algebra build_hermitian_matrix_algebra(std::size_t n, const Tolerance& tol) {
  if (n < 1 || n > 12) throw Error(ErrorKind::SizeOutOfRange, "hermitian_matrix order must be in [1, 12]");
  if (!tol.valid()) throw Error(ErrorKind::ParamOutOfRange, "invalid tolerance");
  return Algebra(std::make_shared<detail::HermitianModel>(n, tol));
}

Algebra build_spin_factor(std::size_t n, const Tolerance& tol) {
  if (n < 3) throw Error(ErrorKind::SizeOutOfRange, "spin factor needs n >= 3");
  if (!tol.valid()) throw Error(ErrorKind::ParamOutOfRange, "invalid tolerance");
  return Algebra(std::make_shared<detail::SpinModel>(n, tol));
}

Algebra build_direct_sum(std::vector<Algebra> parts) {
  if (parts.empty()) throw Error(ErrorKind::EmptyParts, "direct sum needs at least one part");
  std::size_t dim = 0;
  for (const auto& p : parts) dim += p.dim();
  const Tolerance tol = parts.front().tol();
  return Algebra(std::make_shared<detail::DirectSumModel>(std::move(parts), dim, tol));
}

Algebra build_peirce2(const Algebra& ambient, const Element& e, const ComplexMatrix& basis) {
  ambient.check(e);
  if (basis.rows() != ambient.dim() || basis.cols() == 0)
    throw Error(ErrorKind::DegenerateInput, "Peirce-2 basis has wrong shape");
  return Algebra(std::make_shared<detail::Peirce2Model>(ambient, e, basis, ambient.tol()));
}

// ---------------------------------------------------------------- helpers

double self_adjoint_residual(const Algebra& a, const Element& x) {
  return a.norm(x - a.involution(x));
}

bool is_self_adjoint(const Algebra& a, const Element& x) {
  return self_adjoint_residual(a, x) <= a.tol().abs_eps * one_plus_norm(a, x);
}

Element self_adjoint_part(const Algebra& a, const Element& x) {
  return (x + a.involution(x)) * 0.5;
}

}  // namespace jbstar
