#include "jbstar/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jbstar/calculus.hpp"
#include "jbstar/error.hpp"

namespace jbstar {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string kind_of(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) bad("\"kind\" must be a string");
  return k.get<std::string>();
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Complex scalar(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("coordinate must be a number or [re, im]");
}

Algebra algebra_from(const json& j, const Tolerance& tol) {
  const std::string kind = kind_of(j);
  try {
    if (kind == "hermitian_matrix") return build_hermitian_matrix_algebra(count(field(j, "n"), "n"), tol);
    if (kind == "spin") return build_spin_factor(count(field(j, "n"), "n"), tol);
    if (kind == "direct_sum") {
      const json& s = field(j, "summands");
      if (!s.is_array()) bad("\"summands\" must be an array");
      std::vector<Algebra> parts;
      for (const auto& p : s) parts.push_back(algebra_from(p, tol));
      return build_direct_sum(std::move(parts));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    bad(e.what());
  }
  bad("unknown algebra kind \"" + kind + "\"");
}

json algebra_json(const Algebra& A) {
  switch (A.kind()) {
    case AlgebraKind::HermitianMatrix:
      return {{"kind", "hermitian_matrix"}, {"n", A.order()}};
    case AlgebraKind::Spin:
      return {{"kind", "spin"}, {"n", A.order()}};
    case AlgebraKind::DirectSum: {
      json s = json::array();
      for (const auto& p : A.parts()) s.push_back(algebra_json(p));
      return {{"kind", "direct_sum"}, {"summands", s}};
    }
    default:
      bad("algebra " + A.describe() + " has no descriptor");
  }
}

Element element_from(const Algebra& A, const json& j) {
  std::vector<Complex> c;
  if (j.is_object() && j.contains("matrix")) {
    if (A.kind() != AlgebraKind::HermitianMatrix) bad("\"matrix\" elements need a hermitian_matrix algebra");
    const json& m = j.at("matrix");
    if (!m.is_array() || m.size() != A.order()) bad("matrix has the wrong number of rows");
    for (const auto& row : m) {
      if (!row.is_array() || row.size() != A.order()) bad("matrix has a row of the wrong length");
      for (const auto& x : row) c.push_back(scalar(x));
    }
  } else if (j.is_array()) {
    for (const auto& x : j) c.push_back(scalar(x));
  } else {
    bad("element must be a coordinate array or {\"matrix\": ...}");
  }
  if (c.size() != A.dim())
    bad("element has " + std::to_string(c.size()) + " coordinates, " + A.describe() + " needs " +
        std::to_string(A.dim()));
  return A.element(std::move(c));
}

ElementMap beta_from(const Algebra& B, const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "zero") return [B](const Element&) { return B.zero(); };
  if (kind == "central_projection") {
    const double r = number(field(j, "scale"), "scale");
    const auto centre = center_basis(B);
    return [B, centre, r](const Element& a) {
      Element out = B.zero();
      for (const auto& z : centre) out += z * inner(z.coords(), a.coords());
      return self_adjoint_part(B, out) * r;
    };
  }
  bad("unknown beta kind \"" + kind + "\"");
}

SaFunction functional_from(const Algebra& A, const json& j) {
  const json& rows = field(j, "rows");
  if (!rows.is_array() || rows.empty()) bad("\"rows\" must be a non-empty array");
  std::vector<std::vector<double>> m;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 2 * A.dim())
      bad("each row needs 2·dim = " + std::to_string(2 * A.dim()) + " entries");
    std::vector<double> r;
    for (const auto& x : row) r.push_back(number(x, "row entry"));
    m.push_back(std::move(r));
  }
  return [m](const Element& a) {
    std::vector<double> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t k = 0; k < a.size(); ++k)
        out[i] += m[i][2 * k] * a[k].real() + m[i][2 * k + 1] * a[k].imag();
    return out;
  };
}

MapSpec map_from(const Algebra& A, const json& j);

MapUnderTest required_map(const Algebra& A, const json& j, const char* key) {
  MapSpec s = map_from(A, field(j, key));
  if (!s.map) bad(std::string("\"") + key + "\" must be an algebra map");
  return *s.map;
}

MapSpec map_from(const Algebra& A, const json& j) {
  MapSpec s{kind_of(j), A, std::nullopt, false, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  const std::string& kind = s.kind;
  try {
    if (kind == "identity") {
      s.map = identity_map(A);
    } else if (kind == "star") {
      s.map = star_map(A);
    } else if (kind == "transpose") {
      s.map = transpose_map(A);
    } else if (kind == "theta_conjugation") {
      s.map = conjugation_map(A, element_from(A, field(j, "w")));
    } else if (kind == "u_operator") {
      s.map = u_operator_map(A, element_from(A, field(j, "w")));
    } else if (kind == "summand_permutation") {
      const json& p = field(j, "perm");
      if (!p.is_array()) bad("\"perm\" must be an array");
      std::vector<std::size_t> perm;
      for (const auto& x : p) perm.push_back(count(x, "perm entry"));
      s.map = summand_permutation_map(A, perm);
    } else if (kind == "central_symmetry_twist") {
      const MapUnderTest theta = required_map(A, j, "theta");
      s.map = central_symmetry_twist(theta, element_from(theta.target, field(j, "s")));
    } else if (kind == "phase") {
      s.map = phase_map(required_map(A, j, "theta"), number(field(j, "phi"), "phi"));
    } else if (kind == "composition") {
      const MapUnderTest inner_map = required_map(A, j, "inner");
      s.map = compose(required_map(inner_map.target, j, "outer"), inner_map);
      if (kind_of(field(j, "inner")) == "star") s.theta = required_map(inner_map.target, j, "outer");
    } else if (kind == "spin_counterexample") {
      if (A.kind() != AlgebraKind::Spin) bad("spin_counterexample needs a spin algebra");
      const double eps = j.contains("epsilon") ? number(j.at("epsilon"), "epsilon") : 0.3;
      const auto cx = build_spin_counterexample(A.order(), eps);
      s.source = cx.algebra;
      s.map = cx.map;
      s.epsilon = eps;
    } else if (kind == "exp_form") {
      const MapUnderTest theta = required_map(A, j, "theta");
      s.theta = theta;
      s.c = element_from(theta.target, field(j, "c"));
      s.beta = j.contains("beta") ? beta_from(theta.target, j.at("beta")) : beta_from(theta.target, json{{"kind", "zero"}});
      s.map = exp_form_map(theta, *s.beta, *s.c);
      s.unitary_domain = true;
    } else if (kind == "generator_warp") {
      s.map = generator_warp_map(A, number(field(j, "epsilon"), "epsilon"));
      s.unitary_domain = true;
    } else if (kind == "linear_functional") {
      s.functional = functional_from(A, j);
    } else {
      bad("unknown map kind \"" + kind + "\"");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    bad(kind + ": " + e.what());
  }
  if (j.contains("theta") && !s.theta) s.theta = required_map(A, j, "theta");
  if (s.map && !s.functional && !s.unitary_domain) s.functional = as_sa_function(*s.map);
  return s;
}

}  // namespace

Algebra parse_algebra(const std::string& text, const Tolerance& tol) { return algebra_from(parse_text(text), tol); }

Algebra load_algebra(const std::filesystem::path& path, const Tolerance& tol) {
  return parse_algebra(read_file(path), tol);
}

std::string algebra_to_json(const Algebra& A) { return algebra_json(A).dump(); }

Element parse_element(const Algebra& A, const std::string& text) { return element_from(A, parse_text(text)); }

MapSpec parse_map(const Algebra& A, const std::string& text) { return map_from(A, parse_text(text)); }

MapSpec load_map(const Algebra& A, const std::filesystem::path& path) { return parse_map(A, read_file(path)); }

}  // namespace jbstar
