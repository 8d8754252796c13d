#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "jbstar/algebra.hpp"
#include "jbstar/measure.hpp"
#include "jbstar/preserver.hpp"

namespace jbstar {

/// Algebra descriptors:
///   {"kind": "hermitian_matrix", "n": 3}
///   {"kind": "spin", "n": 4}
///   {"kind": "direct_sum", "summands": [ ... ]}
/// Throws ParseError on malformed input.
Algebra parse_algebra(const std::string& text, const Tolerance& tol = {});
Algebra load_algebra(const std::filesystem::path& path, const Tolerance& tol = {});
/// Canonical descriptor of an algebra built by the factories above.
std::string algebra_to_json(const Algebra& A);

/// Elements are coordinate arrays whose entries are numbers or [re, im]
/// pairs. A hermitian_matrix element may also be {"matrix": [[...], ...]}.
Element parse_element(const Algebra& A, const std::string& text);

/// A parsed map descriptor. `source` is the algebra the map acts on; for a
/// spin_counterexample it is the counterexample's own spin factor.
struct MapSpec {
  std::string kind;
  Algebra source;
  std::optional<MapUnderTest> map;
  bool unitary_domain = false;  // only meaningful on unitaries
  std::optional<MapUnderTest> theta;
  std::optional<ElementMap> beta;
  std::optional<Element> c;
  std::optional<double> epsilon;
  std::optional<SaFunction> functional;  // self-adjoint part as f : A_sa → ℝ^d
};

/// Map descriptors:
///   {"kind": "identity"} | {"kind": "star"} | {"kind": "transpose"}
///   {"kind": "theta_conjugation", "w": element}
///   {"kind": "u_operator", "w": element}
///   {"kind": "summand_permutation", "perm": [1, 0]}
///   {"kind": "central_symmetry_twist", "theta": map, "s": element}
///   {"kind": "phase", "theta": map, "phi": 0.5}
///   {"kind": "composition", "outer": map, "inner": map}
///   {"kind": "spin_counterexample", "epsilon": 0.3}
///   {"kind": "exp_form", "theta": map, "c": element,
///    "beta": {"kind": "zero"} | {"kind": "central_projection", "scale": r}}
///   {"kind": "generator_warp", "epsilon": 0.2}
///   {"kind": "linear_functional", "rows": [[...], ...]}
/// Each row of a linear_functional acts on the (Re, Im) coordinates of an
/// element, so it has 2·dim entries.
MapSpec parse_map(const Algebra& A, const std::string& text);
MapSpec load_map(const Algebra& A, const std::filesystem::path& path);

}  // namespace jbstar
