#include <array>
#include <utility>

#include "hklab/scenario.hpp"

namespace hklab {

namespace {

constexpr std::string_view kRegularBaseline = R"({
  "name": "regular_baseline",
  "ring": {"characteristic": 2, "variables": ["x", "y"], "relations": []},
  "loci": [
    {"id": "origin", "kind": "maximal_point", "coordinates": ["0", "0"]}
  ],
  "q_exponents": [1, 2, 3, 4],
  "epsilon": "0",
  "checks": ["hkf"],
  "assert_equidimensional": true,
  "output": {"format": "json", "path": ""}
})";

constexpr std::string_view kNodeCurve = R"({
  "name": "node_curve",
  "ring": {"characteristic": 2, "variables": ["x", "y"], "relations": ["x*y"]},
  "loci": [
    {"id": "branch", "kind": "coordinate_prime", "variables": ["x"]},
    {"id": "origin", "kind": "maximal_point", "coordinates": ["0", "0"]},
    {"id": "smooth", "kind": "maximal_point", "coordinates": ["0", "1"]}
  ],
  "q_exponents": [1, 2, 3, 4, 5, 6],
  "epsilon": "1/10",
  "checks": ["hkf", "estimate", "monotonicity", "scan", "parameter_multiplicity"],
  "assert_equidimensional": true,
  "output": {"format": "json", "path": ""},
  "monotonicity": {"chains": [["branch", "origin"], ["branch", "smooth"]]},
  "scan": {"base": "branch", "points": ["origin", "smooth"]},
  "parameter_multiplicity": [
    {"locus": "origin", "parameters": ["x+y"], "exponents": [2]},
    {"locus": "origin", "parameters": ["x+y"], "exponents": [3]}
  ]
})";

constexpr std::string_view kCuspCurve = R"({
  "name": "cusp_curve",
  "ring": {"characteristic": 5, "variables": ["x", "y"], "relations": ["y^2-x^3"]},
  "loci": [
    {"id": "origin", "kind": "maximal_point", "coordinates": ["0", "0"]},
    {"id": "smooth", "kind": "maximal_point", "coordinates": ["1", "1"]}
  ],
  "q_exponents": [1, 2, 3],
  "epsilon": "1/10",
  "checks": ["hkf", "estimate", "parameter_multiplicity"],
  "assert_equidimensional": true,
  "output": {"format": "json", "path": ""},
  "parameter_multiplicity": [
    {"locus": "origin", "parameters": ["x"], "exponents": [2]},
    {"locus": "origin", "parameters": ["x"], "exponents": [3]},
    {"locus": "origin", "parameters": ["x"], "exponents": [4]}
  ]
})";

constexpr std::string_view kBrennerMonsky = R"({
  "name": "brenner_monsky",
  "ring": {
    "characteristic": 2,
    "variables": ["x", "y", "z", "t"],
    "relations": ["z^4+x*y*z^2+(x^3+y^3)*z+t*x^2*y^2"]
  },
  "loci": [
    {"id": "curve", "kind": "coordinate_prime", "variables": ["x", "y", "z"]},
    {"id": "t0", "kind": "maximal_point", "coordinates": ["0", "0", "0", "0"]},
    {"id": "t1", "kind": "maximal_point", "coordinates": ["0", "0", "0", "1"]},
    {"id": "ta", "kind": "maximal_point", "coordinates": ["0", "0", "0", "a"], "extension_degree": 2},
    {"id": "ta1", "kind": "maximal_point", "coordinates": ["0", "0", "0", "a+1"], "extension_degree": 2}
  ],
  "q_exponents": [1, 2, 3, 4],
  "epsilon": "1/100",
  "checks": ["hkf", "estimate", "monotonicity", "scan"],
  "assert_equidimensional": true,
  "output": {"format": "json", "path": ""},
  "monotonicity": {
    "chains": [["curve", "t0"], ["curve", "t1"], ["curve", "ta"], ["curve", "ta1"]]
  },
  "scan": {"base": "curve", "points": ["t0", "t1", "ta", "ta1"]}
})";

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kBuiltins = {{
    {"brenner_monsky", kBrennerMonsky},
    {"cusp_curve", kCuspCurve},
    {"node_curve", kNodeCurve},
    {"regular_baseline", kRegularBaseline},
}};

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kBuiltins) names.emplace_back(name);
  return names;
}

std::optional<std::string> builtin_scenario(std::string_view name) {
  for (const auto& [builtin, text] : kBuiltins) {
    if (builtin == name) return std::string(text);
  }
  return std::nullopt;
}

}  // namespace hklab
