#include "hklab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <new>
#include <set>

#include <openssl/evp.h>

#include "hklab/error.hpp"
#include "hklab/parser.hpp"
#include "json.hpp"

#ifndef HKLAB_ENGINE_VERSION
#define HKLAB_ENGINE_VERSION "unknown"
#endif

namespace hklab {

using json = nlohmann::json;

namespace {

constexpr std::string_view kCheckNames[] = {"hkf", "estimate", "monotonicity", "scan", "parameter_multiplicity"};

class Issues {
 public:
  void add(std::string pointer, std::string message) { list_.push_back({std::move(pointer), std::move(message)}); }
  bool empty() const { return list_.empty(); }
  std::size_t size() const { return list_.size(); }
  [[noreturn]] void raise() { throw ConfigError(std::move(list_)); }
  void raise_if_any() {
    if (!list_.empty()) raise();
  }

 private:
  std::vector<ConfigIssue> list_;
};

std::string at(const std::string& base, std::string_view key) { return base + "/" + std::string(key); }
std::string at(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

void check_keys(const json& object, const std::string& pointer, std::initializer_list<std::string_view> allowed,
                Issues& issues) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      issues.add(at(pointer, key), "unknown key");
    }
  }
}

const json* member(const json& object, std::string_view key) {
  const auto it = object.find(std::string(key));
  return it == object.end() ? nullptr : &*it;
}

std::optional<std::uint64_t> read_uint(const json& value, const std::string& pointer, Issues& issues) {
  if (!value.is_number_integer() || (value.is_number_integer() && value.get<std::int64_t>() < 0)) {
    issues.add(pointer, "expected a non-negative integer");
    return std::nullopt;
  }
  return value.get<std::uint64_t>();
}

std::optional<std::string> read_string(const json& value, const std::string& pointer, Issues& issues) {
  if (!value.is_string()) {
    issues.add(pointer, "expected a string");
    return std::nullopt;
  }
  return value.get<std::string>();
}

std::vector<std::string> read_strings(const json& value, const std::string& pointer, Issues& issues) {
  std::vector<std::string> out;
  if (!value.is_array()) {
    issues.add(pointer, "expected an array of strings");
    return out;
  }
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (auto s = read_string(value[i], at(pointer, i), issues)) out.push_back(std::move(*s));
  }
  return out;
}

std::vector<std::uint32_t> read_uints(const json& value, const std::string& pointer, Issues& issues) {
  std::vector<std::uint32_t> out;
  if (!value.is_array()) {
    issues.add(pointer, "expected an array of integers");
    return out;
  }
  for (std::size_t i = 0; i < value.size(); ++i) {
    const auto v = read_uint(value[i], at(pointer, i), issues);
    if (!v) continue;
    if (*v > 0xffffffffULL) {
      issues.add(at(pointer, i), "integer out of range");
      continue;
    }
    out.push_back(static_cast<std::uint32_t>(*v));
  }
  return out;
}

bool valid_id(const std::string& id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

RingSpec read_ring(const json& value, const std::string& pointer, Issues& issues) {
  RingSpec ring;
  if (!value.is_object()) {
    issues.add(pointer, "expected an object");
    return ring;
  }
  check_keys(value, pointer, {"characteristic", "extension_degree", "parameter", "variables", "relations"}, issues);
  if (const json* v = member(value, "characteristic")) {
    if (auto p = read_uint(*v, at(pointer, "characteristic"), issues)) {
      if (*p > 0xffffffffULL) {
        issues.add(at(pointer, "characteristic"), "characteristic out of range");
      } else {
        ring.characteristic = static_cast<std::uint32_t>(*p);
      }
    }
  } else {
    issues.add(at(pointer, "characteristic"), "missing required key");
  }
  if (const json* v = member(value, "extension_degree")) {
    if (auto k = read_uint(*v, at(pointer, "extension_degree"), issues)) {
      if (*k < 1 || *k > 64) {
        issues.add(at(pointer, "extension_degree"), "extension degree must be between 1 and 64");
      } else {
        ring.extension_degree = static_cast<std::uint32_t>(*k);
      }
    }
  }
  if (const json* v = member(value, "parameter")) ring.parameter = read_string(*v, at(pointer, "parameter"), issues);
  if (const json* v = member(value, "variables")) {
    ring.variables = read_strings(*v, at(pointer, "variables"), issues);
  } else {
    issues.add(at(pointer, "variables"), "missing required key");
  }
  if (const json* v = member(value, "relations")) ring.relations = read_strings(*v, at(pointer, "relations"), issues);
  return ring;
}

// Builds the ring; returns nullopt (with issues recorded) when it cannot.
std::optional<RingPresentation> build_ring(const RingSpec& spec, const std::string& pointer, Issues& issues) {
  std::optional<Field> field;
  try {
    if (spec.parameter) {
      if (spec.extension_degree != 1) {
        issues.add(at(pointer, "parameter"), "a function-field parameter requires extension_degree 1");
        return std::nullopt;
      }
      field = Field::rational_function(spec.characteristic, *spec.parameter);
    } else {
      field = Field::extension(spec.characteristic, spec.extension_degree);
    }
  } catch (const Error& e) {
    issues.add(at(pointer, "characteristic"), e.what());
    return std::nullopt;
  }
  if (spec.variables.empty()) {
    issues.add(at(pointer, "variables"), "at least one variable is required");
    return std::nullopt;
  }
  RingRef ring;
  try {
    ring = PolyRing::make(*field, spec.variables);
  } catch (const Error& e) {
    issues.add(at(pointer, "variables"), e.what());
    return std::nullopt;
  }
  std::vector<Polynomial> relations;
  const std::size_t before = issues.size();
  for (std::size_t i = 0; i < spec.relations.size(); ++i) {
    const std::string where = at(at(pointer, "relations"), i);
    try {
      Polynomial f = parse_polynomial(spec.relations[i], ring);
      if (f.is_zero()) {
        issues.add(where, "relation is zero");
      } else {
        relations.push_back(std::move(f));
      }
    } catch (const Error& e) {
      issues.add(where, std::string(e.kind()) + ": " + e.what());
    }
  }
  if (issues.size() != before) return std::nullopt;
  return RingPresentation::make(ring, std::move(relations));
}

std::optional<CompiledScenario> compile_into(const ScenarioConfig& config, Issues& issues) {
  const auto ring = build_ring(config.ring, "/ring", issues);
  if (!ring) return std::nullopt;
  const std::uint32_t p = ring->characteristic();

  if (ring->relations.size() > 1 && !config.assert_equidimensional) {
    issues.add("/assert_equidimensional",
               "heights assume a locally equidimensional ring; set this to true to assert it");
  }

  CompiledScenario out{*ring, {}, {}, {}};
  std::vector<std::optional<PrimeLocus>> built;
  for (std::size_t i = 0; i < config.loci.size(); ++i) {
    const LocusSpec& spec = config.loci[i];
    const std::string where = at("/loci", i);
    if (!valid_id(spec.id)) {
      issues.add(at(where, "id"), "ids must be nonempty and use only letters, digits, '_', '-', '.'");
    } else if (out.locus_index.count(spec.id)) {
      issues.add(at(where, "id"), "duplicate locus id '" + spec.id + "'");
    }
    std::optional<PrimeLocus> locus;
    try {
      if (spec.kind == LocusKind::maximal_point) {
        if (!spec.variables.empty()) issues.add(at(where, "variables"), "maximal points take coordinates");
        Field field = ring->field();
        if (spec.extension_degree) {
          if (ring->field().kind() == FieldKind::rational_function) {
            issues.add(at(where, "extension_degree"), "extensions of a function field are not supported");
          } else if (*spec.extension_degree != ring->field().extension_degree() &&
                     ring->field().extension_degree() != 1) {
            issues.add(at(where, "extension_degree"), "only extensions of a prime field are supported");
          } else {
            field = Field::extension(p, *spec.extension_degree);
          }
        }
        std::vector<FieldElement> coords;
        bool parsed = true;
        for (std::size_t j = 0; j < spec.coordinates.size(); ++j) {
          try {
            coords.push_back(parse_field_element(spec.coordinates[j], field));
          } catch (const Error& e) {
            issues.add(at(at(where, "coordinates"), j), e.what());
            parsed = false;
          }
        }
        if (parsed) locus = PrimeLocus::maximal_point(*ring, std::move(coords));
      } else {
        if (!spec.coordinates.empty()) issues.add(at(where, "coordinates"), "coordinate primes take variables");
        if (spec.extension_degree) issues.add(at(where, "extension_degree"), "only maximal points take a field");
        locus = PrimeLocus::coordinate_prime(*ring, spec.variables);
      }
    } catch (const Error& e) {
      issues.add(where, std::string(e.kind()) + ": " + e.what());
    }
    if (!out.locus_index.count(spec.id)) out.locus_index[spec.id] = i;
    built.push_back(std::move(locus));
  }

  const auto lookup = [&](const std::string& id, const std::string& where) -> std::optional<std::size_t> {
    const auto it = out.locus_index.find(id);
    if (it == out.locus_index.end()) {
      issues.add(where, "unknown locus '" + id + "'");
      return std::nullopt;
    }
    if (!built[it->second]) return std::nullopt;
    return it->second;
  };

  if (config.q_exponents.empty()) issues.add("/q_exponents", "at least one exponent is required");
  const std::uint64_t q_limit = 1ULL << 31;
  for (std::size_t i = 0; i < config.q_exponents.size(); ++i) {
    const std::uint32_t e = config.q_exponents[i];
    if (e == 0) {
      issues.add(at("/q_exponents", i), "exponents start at 1");
      continue;
    }
    if (i > 0 && e <= config.q_exponents[i - 1]) issues.add(at("/q_exponents", i), "must be strictly increasing");
    std::uint64_t q = 1;
    for (std::uint32_t k = 0; k < e && q < q_limit; ++k) q *= p;
    if (q >= q_limit) issues.add(at("/q_exponents", i), "p^e is too large");
  }
  if (config.requested(Check::estimate) || config.requested(Check::scan)) {
    bool consecutive = config.q_exponents.size() >= 2;
    for (std::size_t i = 1; i < config.q_exponents.size(); ++i) {
      consecutive = consecutive && config.q_exponents[i] == config.q_exponents[i - 1] + 1;
    }
    if (!consecutive) {
      issues.add("/q_exponents", "estimate and scan need at least two consecutive exponents");
    }
  }
  if (config.epsilon < 0) issues.add("/epsilon", "epsilon must be non-negative");

  if (config.requested(Check::monotonicity)) {
    if (config.chains.empty()) issues.add("/monotonicity/chains", "monotonicity needs at least one chain");
    for (std::size_t c = 0; c < config.chains.size(); ++c) {
      const std::string where = at("/monotonicity/chains", c);
      const auto& chain = config.chains[c];
      if (chain.size() < 2) {
        issues.add(where, "a chain needs at least two loci");
        continue;
      }
      std::vector<std::optional<std::size_t>> idx;
      for (std::size_t j = 0; j < chain.size(); ++j) idx.push_back(lookup(chain[j], at(where, j)));
      for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        if (idx[j] && idx[j + 1] && !built[*idx[j]]->contained_in(*built[*idx[j + 1]])) {
          issues.add(where, "NotAChain: '" + chain[j] + "' is not contained in '" + chain[j + 1] + "'");
        }
      }
    }
  }

  if (config.requested(Check::scan)) {
    if (!config.scan) {
      issues.add("/scan", "scan requested without a scan section");
    } else {
      const auto base = lookup(config.scan->base, "/scan/base");
      if (config.scan->points.empty()) issues.add("/scan/points", "at least one point is required");
      for (std::size_t j = 0; j < config.scan->points.size(); ++j) {
        const auto point = lookup(config.scan->points[j], at("/scan/points", j));
        if (base && point && !built[*base]->contained_in(*built[*point])) {
          issues.add(at("/scan/points", j), "NotContaining: the point does not contain the base prime");
        }
      }
    }
  }

  if (config.requested(Check::parameter_multiplicity) && config.parameter_sets.empty()) {
    issues.add("/parameter_multiplicity", "parameter_multiplicity requested without parameter sets");
  }
  for (std::size_t s = 0; s < config.parameter_sets.size(); ++s) {
    const ParameterSpec& spec = config.parameter_sets[s];
    const std::string where = at("/parameter_multiplicity", s);
    std::vector<Polynomial> params;
    for (std::size_t j = 0; j < spec.parameters.size(); ++j) {
      try {
        params.push_back(parse_polynomial(spec.parameters[j], *ring));
      } catch (const Error& e) {
        issues.add(at(at(where, "parameters"), j), std::string(e.kind()) + ": " + e.what());
      }
    }
    if (spec.exponents.size() != spec.parameters.size()) {
      issues.add(at(where, "exponents"), "one exponent per parameter is required");
    }
    for (std::size_t j = 0; j < spec.exponents.size(); ++j) {
      if (spec.exponents[j] == 0) issues.add(at(at(where, "exponents"), j), "exponents must be positive");
    }
    if (const auto index = lookup(spec.locus, at(where, "locus"))) {
      const PrimeLocus& locus = *built[*index];
      if (locus.kind() != LocusKind::maximal_point) {
        issues.add(at(where, "locus"), "parameters are checked at maximal points");
      } else if (spec.parameters.size() != locus.height()) {
        issues.add(at(where, "parameters"), "NotSystemOfParameters: expected " + std::to_string(locus.height()) +
                                                " parameters");
      }
    }
    out.parameters.push_back(std::move(params));
  }

  if (!issues.empty()) return std::nullopt;
  for (auto& locus : built) out.loci.push_back(std::move(*locus));
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    throw Error("HashError", "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

CellError capture_error() {
  try {
    throw;
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  } catch (const std::bad_alloc&) {
    return {"ResourceExceeded", "out of memory"};
  } catch (const std::exception& e) {
    return {"InternalError", e.what()};
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Check check) { return kCheckNames[static_cast<std::size_t>(check)]; }

std::optional<Check> parse_check(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kCheckNames); ++i) {
    if (kCheckNames[i] == name) return static_cast<Check>(i);
  }
  return std::nullopt;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::error:
      return "ERROR";
    case CheckStatus::reported:
      return "REPORTED";
  }
  return "ERROR";
}

bool ScenarioConfig::requested(Check check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

std::string engine_version() { return HKLAB_ENGINE_VERSION; }

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({{"", std::string("not a JSON document: ") + e.what()}});
  }
  Issues issues;
  if (!doc.is_object()) {
    issues.add("", "expected a JSON object");
    issues.raise();
  }
  check_keys(doc,
             "",
             {"name", "ring", "loci", "q_exponents", "epsilon", "checks", "assert_equidimensional", "output",
              "monotonicity", "scan", "parameter_multiplicity"},
             issues);

  ScenarioConfig config;
  if (const json* v = member(doc, "name")) config.name = read_string(*v, "/name", issues).value_or("");
  if (const json* v = member(doc, "ring")) {
    config.ring = read_ring(*v, "/ring", issues);
  } else {
    issues.add("/ring", "missing required key");
  }

  if (const json* v = member(doc, "loci")) {
    if (!v->is_array()) {
      issues.add("/loci", "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& entry = (*v)[i];
        const std::string where = at("/loci", i);
        if (!entry.is_object()) {
          issues.add(where, "expected an object");
          continue;
        }
        check_keys(entry, where, {"id", "kind", "coordinates", "variables", "extension_degree"}, issues);
        LocusSpec spec;
        if (const json* id = member(entry, "id")) {
          spec.id = read_string(*id, at(where, "id"), issues).value_or("");
        } else {
          issues.add(at(where, "id"), "missing required key");
        }
        const json* kind = member(entry, "kind");
        const auto kind_name = kind ? read_string(*kind, at(where, "kind"), issues) : std::nullopt;
        if (!kind) issues.add(at(where, "kind"), "missing required key");
        if (kind_name == "maximal_point") {
          spec.kind = LocusKind::maximal_point;
          if (const json* c = member(entry, "coordinates")) {
            spec.coordinates = read_strings(*c, at(where, "coordinates"), issues);
          } else {
            issues.add(at(where, "coordinates"), "missing required key");
          }
        } else if (kind_name == "coordinate_prime") {
          spec.kind = LocusKind::coordinate_prime;
          if (const json* c = member(entry, "variables")) {
            spec.variables = read_strings(*c, at(where, "variables"), issues);
          } else {
            issues.add(at(where, "variables"), "missing required key");
          }
        } else if (kind_name) {
          issues.add(at(where, "kind"), "expected \"maximal_point\" or \"coordinate_prime\"");
        }
        if (kind_name == "maximal_point" && member(entry, "variables")) {
          issues.add(at(where, "variables"), "maximal points take coordinates");
        }
        if (kind_name == "coordinate_prime" && member(entry, "coordinates")) {
          issues.add(at(where, "coordinates"), "coordinate primes take variables");
        }
        if (const json* k = member(entry, "extension_degree")) {
          if (auto degree = read_uint(*k, at(where, "extension_degree"), issues)) {
            if (*degree < 1 || *degree > 64) {
              issues.add(at(where, "extension_degree"), "extension degree must be between 1 and 64");
            } else {
              spec.extension_degree = static_cast<std::uint32_t>(*degree);
            }
          }
        }
        config.loci.push_back(std::move(spec));
      }
    }
  }

  if (const json* v = member(doc, "q_exponents")) {
    config.q_exponents = read_uints(*v, "/q_exponents", issues);
  } else {
    issues.add("/q_exponents", "missing required key");
  }
  if (const json* v = member(doc, "epsilon")) {
    if (auto text_value = read_string(*v, "/epsilon", issues)) {
      try {
        config.epsilon = parse_rational(*text_value);
      } catch (const std::exception& e) {
        issues.add("/epsilon", std::string("expected a rational like \"1/10\": ") + e.what());
      }
    }
  }
  if (const json* v = member(doc, "checks")) {
    const auto names = read_strings(*v, "/checks", issues);
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (auto check = parse_check(names[i])) {
        config.checks.push_back(*check);
      } else {
        issues.add(at("/checks", i), "unknown check '" + names[i] + "'");
      }
    }
    std::sort(config.checks.begin(), config.checks.end());
    config.checks.erase(std::unique(config.checks.begin(), config.checks.end()), config.checks.end());
  } else {
    issues.add("/checks", "missing required key");
  }
  if (const json* v = member(doc, "assert_equidimensional")) {
    if (!v->is_boolean()) {
      issues.add("/assert_equidimensional", "expected a boolean");
    } else {
      config.assert_equidimensional = v->get<bool>();
    }
  }
  if (const json* v = member(doc, "output")) {
    if (!v->is_object()) {
      issues.add("/output", "expected an object");
    } else {
      check_keys(*v, "/output", {"format", "path"}, issues);
      if (const json* f = member(*v, "format")) {
        const auto format = read_string(*f, "/output/format", issues);
        if (format == "json") {
          config.output.format = OutputFormat::json;
        } else if (format == "csv") {
          config.output.format = OutputFormat::csv;
        } else if (format) {
          issues.add("/output/format", "expected \"json\" or \"csv\"");
        }
      }
      if (const json* path = member(*v, "path")) config.output.path = read_string(*path, "/output/path", issues).value_or("");
    }
  }
  if (const json* v = member(doc, "monotonicity")) {
    if (!v->is_object()) {
      issues.add("/monotonicity", "expected an object");
    } else {
      check_keys(*v, "/monotonicity", {"chains"}, issues);
      if (const json* chains = member(*v, "chains")) {
        if (!chains->is_array()) {
          issues.add("/monotonicity/chains", "expected an array of arrays");
        } else {
          for (std::size_t i = 0; i < chains->size(); ++i) {
            config.chains.push_back(read_strings((*chains)[i], at("/monotonicity/chains", i), issues));
          }
        }
      }
    }
  }
  if (const json* v = member(doc, "scan")) {
    if (!v->is_object()) {
      issues.add("/scan", "expected an object");
    } else {
      check_keys(*v, "/scan", {"base", "points"}, issues);
      ScanSpec scan;
      if (const json* b = member(*v, "base")) {
        scan.base = read_string(*b, "/scan/base", issues).value_or("");
      } else {
        issues.add("/scan/base", "missing required key");
      }
      if (const json* pts = member(*v, "points")) {
        scan.points = read_strings(*pts, "/scan/points", issues);
      } else {
        issues.add("/scan/points", "missing required key");
      }
      config.scan = std::move(scan);
    }
  }
  if (const json* v = member(doc, "parameter_multiplicity")) {
    if (!v->is_array()) {
      issues.add("/parameter_multiplicity", "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& entry = (*v)[i];
        const std::string where = at("/parameter_multiplicity", i);
        if (!entry.is_object()) {
          issues.add(where, "expected an object");
          continue;
        }
        check_keys(entry, where, {"locus", "parameters", "exponents"}, issues);
        ParameterSpec spec;
        if (const json* l = member(entry, "locus")) {
          spec.locus = read_string(*l, at(where, "locus"), issues).value_or("");
        } else {
          issues.add(at(where, "locus"), "missing required key");
        }
        if (const json* ps = member(entry, "parameters")) {
          spec.parameters = read_strings(*ps, at(where, "parameters"), issues);
        } else {
          issues.add(at(where, "parameters"), "missing required key");
        }
        if (const json* es = member(entry, "exponents")) {
          spec.exponents = read_uints(*es, at(where, "exponents"), issues);
        } else {
          issues.add(at(where, "exponents"), "missing required key");
        }
        config.parameter_sets.push_back(std::move(spec));
      }
    }
  }

  // Structural problems make the semantic pass meaningless; report them alone.
  issues.raise_if_any();
  compile_into(config, issues);
  issues.raise_if_any();
  return config;
}

std::string print_config(const ScenarioConfig& config) {
  json doc = json::object();
  doc["name"] = config.name;
  json ring = json::object();
  ring["characteristic"] = config.ring.characteristic;
  ring["extension_degree"] = config.ring.extension_degree;
  if (config.ring.parameter) ring["parameter"] = *config.ring.parameter;
  ring["variables"] = config.ring.variables;
  ring["relations"] = config.ring.relations;
  doc["ring"] = std::move(ring);
  json loci = json::array();
  for (const auto& spec : config.loci) {
    json entry = json::object();
    entry["id"] = spec.id;
    if (spec.kind == LocusKind::maximal_point) {
      entry["kind"] = "maximal_point";
      entry["coordinates"] = spec.coordinates;
    } else {
      entry["kind"] = "coordinate_prime";
      entry["variables"] = spec.variables;
    }
    if (spec.extension_degree) entry["extension_degree"] = *spec.extension_degree;
    loci.push_back(std::move(entry));
  }
  doc["loci"] = std::move(loci);
  doc["q_exponents"] = config.q_exponents;
  doc["epsilon"] = to_string(config.epsilon);
  json checks = json::array();
  for (const auto c : config.checks) checks.push_back(std::string(to_string(c)));
  doc["checks"] = std::move(checks);
  doc["assert_equidimensional"] = config.assert_equidimensional;
  doc["output"] = {{"format", config.output.format == OutputFormat::json ? "json" : "csv"},
                   {"path", config.output.path}};
  if (!config.chains.empty()) doc["monotonicity"] = {{"chains", config.chains}};
  if (config.scan) doc["scan"] = {{"base", config.scan->base}, {"points", config.scan->points}};
  if (!config.parameter_sets.empty()) {
    json sets = json::array();
    for (const auto& spec : config.parameter_sets) {
      sets.push_back({{"locus", spec.locus}, {"parameters", spec.parameters}, {"exponents", spec.exponents}});
    }
    doc["parameter_multiplicity"] = std::move(sets);
  }
  return doc.dump(2) + "\n";
}

RingPresentation parse_ring(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({{"", std::string("not a JSON document: ") + e.what()}});
  }
  Issues issues;
  std::string pointer;
  const json* ring_value = &doc;
  if (doc.is_object() && doc.contains("ring")) {
    ring_value = &doc["ring"];
    pointer = "/ring";
  }
  const RingSpec spec = read_ring(*ring_value, pointer, issues);
  issues.raise_if_any();
  auto ring = build_ring(spec, pointer, issues);
  issues.raise_if_any();
  return std::move(*ring);
}

CompiledScenario compile_scenario(const ScenarioConfig& config) {
  Issues issues;
  auto compiled = compile_into(config, issues);
  issues.raise_if_any();
  return std::move(*compiled);
}

// ---------------------------------------------------------------------------
// Runner

int RunReport::exit_code() const {
  bool failed = false;
  bool resource = false;
  const auto note = [&](const std::optional<CellError>& e) {
    if (!e) return;
    if (e->kind == "ResourceExceeded") {
      resource = true;
    } else {
      failed = true;
    }
  };
  for (const auto& [check, s] : status) failed = failed || s == CheckStatus::fail;
  for (const auto& c : cells) note(c.error);
  for (const auto& e : estimates) note(e.error);
  for (const auto& m : monotonicity) note(m.error);
  if (scan) {
    note(scan->base_error);
    for (const auto& p : scan->points) note(p.error);
  }
  for (const auto& p : parameters) note(p.error);
  if (failed) return 1;
  if (resource) return 3;
  return 0;
}

RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const CompiledScenario compiled = compile_scenario(config);
  const RingPresentation& ring = compiled.ring;
  const std::uint32_t p = ring.characteristic();
  GroebnerOptions groebner;
  groebner.degree_cap = options.degree_cap;

  RunReport report;
  report.provenance.scenario = config.name;
  report.provenance.config_hash = sha256_hex(print_config(config));
  report.provenance.engine_version = engine_version();
  report.provenance.degree_cap = options.degree_cap;
  report.provenance.jobs = std::max(1U, options.jobs);

  for (std::size_t i = 0; i < compiled.loci.size(); ++i) {
    const PrimeLocus& locus = compiled.loci[i];
    report.loci.push_back(LocusSummary{
        config.loci[i].id,
        locus.kind() == LocusKind::maximal_point ? "maximal_point" : "coordinate_prime",
        locus.describe(ring),
        locus.height(),
        locus.local_field().to_string(),
    });
  }

  std::vector<std::uint64_t> qs;
  for (const auto e : config.q_exponents) {
    std::uint64_t q = 1;
    for (std::uint32_t k = 0; k < e; ++k) q *= p;
    qs.push_back(q);
  }
  const bool need_cells = config.requested(Check::hkf) || config.requested(Check::estimate) ||
                          config.requested(Check::monotonicity) || config.requested(Check::scan);
  const std::size_t nq = qs.size();
  if (need_cells) {
    report.cells.resize(compiled.loci.size() * nq);
    parallel_for(report.cells.size(), report.provenance.jobs, [&](std::size_t k) {
      Cell& cell = report.cells[k];
      cell.locus_id = config.loci[k / nq].id;
      cell.q = qs[k % nq];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        cell.sample = hk_sample(ring, compiled.loci[k / nq], cell.q, groebner);
      } catch (...) {
        cell.error = capture_error();
      }
      cell.wall_ms = elapsed_ms(t0);
    });
  }
  const auto cell_at = [&](std::size_t locus, std::size_t qi) -> const Cell& { return report.cells[locus * nq + qi]; };
  const auto first_error = [&](std::size_t locus) -> std::optional<CellError> {
    for (std::size_t qi = 0; qi < nq; ++qi) {
      if (cell_at(locus, qi).error) return cell_at(locus, qi).error;
    }
    return std::nullopt;
  };
  const auto estimate_for = [&](std::size_t locus, std::optional<ConvergenceReport>& out,
                                std::optional<CellError>& error) {
    if ((error = first_error(locus))) return;
    std::vector<HKSample> samples;
    for (std::size_t qi = 0; qi < nq; ++qi) samples.push_back(*cell_at(locus, qi).sample);
    try {
      out = fit_convergence(p, compiled.loci[locus].height(), std::move(samples));
    } catch (...) {
      error = capture_error();
    }
  };
  const auto section_status = [](bool failed, bool errored, CheckStatus otherwise) {
    if (failed) return CheckStatus::fail;
    if (errored) return CheckStatus::error;
    return otherwise;
  };

  if (config.requested(Check::hkf)) {
    const bool errored = std::any_of(report.cells.begin(), report.cells.end(), [](const Cell& c) { return c.error.has_value(); });
    report.status[Check::hkf] = section_status(false, errored, CheckStatus::pass);
  }

  if (config.requested(Check::estimate)) {
    bool errored = false;
    for (std::size_t i = 0; i < compiled.loci.size(); ++i) {
      EstimateEntry entry;
      entry.locus_id = config.loci[i].id;
      estimate_for(i, entry.report, entry.error);
      errored = errored || entry.error.has_value();
      report.estimates.push_back(std::move(entry));
    }
    report.status[Check::estimate] = section_status(false, errored, CheckStatus::pass);
  }

  if (config.requested(Check::monotonicity)) {
    bool failed = false;
    bool errored = false;
    for (const auto& chain : config.chains) {
      for (std::size_t qi = 0; qi < nq; ++qi) {
        MonotonicityEntry entry;
        entry.chain = chain;
        entry.q = qs[qi];
        MonotonicityReport m;
        m.q = qs[qi];
        m.pass = true;
        for (std::size_t j = 0; j < chain.size() && !entry.error; ++j) {
          entry.error = cell_at(compiled.locus_index.at(chain[j]), qi).error;
        }
        if (!entry.error) {
          for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
            const Rational& lo = cell_at(compiled.locus_index.at(chain[j]), qi).sample->value;
            const Rational& hi = cell_at(compiled.locus_index.at(chain[j + 1]), qi).sample->value;
            m.links.push_back(MonotonicityLink{j, j + 1, lo, hi, lo <= hi});
            m.pass = m.pass && lo <= hi;
          }
          failed = failed || !m.pass;
          entry.report = std::move(m);
        }
        errored = errored || entry.error.has_value();
        report.monotonicity.push_back(std::move(entry));
      }
    }
    report.status[Check::monotonicity] = section_status(failed, errored, CheckStatus::pass);
  }

  if (config.requested(Check::scan)) {
    ScanSection section;
    section.base = config.scan->base;
    section.epsilon = config.epsilon;
    const std::size_t base = compiled.locus_index.at(section.base);
    estimate_for(base, section.base_report, section.base_error);
    bool errored = section.base_error.has_value();
    for (const auto& id : config.scan->points) {
      ScanPointEntry entry;
      entry.locus_id = id;
      const std::size_t point = compiled.locus_index.at(id);
      estimate_for(point, entry.report, entry.error);
      if (entry.report && section.base_report) {
        entry.classification = classify(*section.base_report, *entry.report, config.epsilon);
        for (std::size_t qi = 0; qi < nq; ++qi) {
          entry.strict_excess.emplace_back(
              qs[qi], cell_at(point, qi).sample->value > cell_at(base, qi).sample->value);
        }
      }
      errored = errored || entry.error.has_value();
      section.points.push_back(std::move(entry));
    }
    report.scan = std::move(section);
    report.status[Check::scan] = section_status(false, errored, CheckStatus::reported);
  }

  if (config.requested(Check::parameter_multiplicity)) {
    report.parameters.resize(config.parameter_sets.size());
    parallel_for(config.parameter_sets.size(), report.provenance.jobs, [&](std::size_t s) {
      const ParameterSpec& spec = config.parameter_sets[s];
      ParameterEntry& entry = report.parameters[s];
      entry.locus_id = spec.locus;
      entry.parameters = spec.parameters;
      entry.exponents = spec.exponents;
      try {
        entry.report = parameter_multiplicity_check(ring, compiled.loci[compiled.locus_index.at(spec.locus)],
                                                    compiled.parameters[s], spec.exponents, groebner);
      } catch (...) {
        entry.error = capture_error();
      }
    });
    bool failed = false;
    bool errored = false;
    for (const auto& entry : report.parameters) {
      failed = failed || (entry.report && !entry.report->holds);
      errored = errored || entry.error.has_value();
    }
    report.status[Check::parameter_multiplicity] = section_status(failed, errored, CheckStatus::pass);
  }

  report.provenance.total_ms = elapsed_ms(started);
  return report;
}

}  // namespace hklab
