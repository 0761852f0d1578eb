#pragma once

// Scenario configurations (JSON documents), the runner that turns them into
// reports, and report emission.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hklab/hilbert_kunz.hpp"

namespace hklab {

enum class Check { hkf, estimate, monotonicity, scan, parameter_multiplicity };

std::string_view to_string(Check check);
std::optional<Check> parse_check(std::string_view name);

enum class OutputFormat { json, csv };

struct RingSpec {
  std::uint32_t characteristic = 2;
  std::uint32_t extension_degree = 1;
  std::optional<std::string> parameter;  // F_p(parameter) coefficients
  std::vector<std::string> variables;
  std::vector<std::string> relations;

  bool operator==(const RingSpec&) const = default;
};

struct LocusSpec {
  std::string id;
  LocusKind kind = LocusKind::maximal_point;
  std::vector<std::string> coordinates;  // maximal points
  std::vector<std::string> variables;    // coordinate primes
  // Coordinates live in GF(p^k) when set; otherwise in the ring's field.
  std::optional<std::uint32_t> extension_degree;

  bool operator==(const LocusSpec&) const = default;
};

struct ScanSpec {
  std::string base;
  std::vector<std::string> points;

  bool operator==(const ScanSpec&) const = default;
};

struct ParameterSpec {
  std::string locus;
  std::vector<std::string> parameters;
  std::vector<std::uint32_t> exponents;

  bool operator==(const ParameterSpec&) const = default;
};

struct OutputSpec {
  OutputFormat format = OutputFormat::json;
  std::string path;  // empty: standard output

  bool operator==(const OutputSpec&) const = default;
};

struct ScenarioConfig {
  std::string name;
  RingSpec ring;
  std::vector<LocusSpec> loci;
  std::vector<std::uint32_t> q_exponents;
  Rational epsilon = 0;
  std::vector<Check> checks;  // sorted, unique
  bool assert_equidimensional = false;
  OutputSpec output;
  std::vector<std::vector<std::string>> chains;  // monotonicity
  std::optional<ScanSpec> scan;
  std::vector<ParameterSpec> parameter_sets;

  bool requested(Check check) const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses and validates a JSON scenario. Every problem is collected with its
/// JSON pointer before ConfigError is thrown. Rings, polynomials and loci are
/// all built here, so a config that parses can be run.
ScenarioConfig parse_config(std::string_view text);

/// Canonical JSON text: parse_config(print_config(c)) == c.
std::string print_config(const ScenarioConfig& config);

/// Builds a ring from a JSON document that is either a ring object
/// ({characteristic, extension_degree?, parameter?, variables, relations?})
/// or a whole scenario with a "ring" member. Throws ConfigError.
RingPresentation parse_ring(std::string_view text);

/// The ring and loci of a validated config, ready to compute with.
struct CompiledScenario {
  RingPresentation ring;
  std::vector<PrimeLocus> loci;
  std::map<std::string, std::size_t> locus_index;
  std::vector<std::vector<Polynomial>> parameters;  // per parameter set
};

CompiledScenario compile_scenario(const ScenarioConfig& config);

struct CellError {
  std::string kind;
  std::string message;
};

struct Cell {
  std::string locus_id;
  std::uint64_t q = 0;
  std::optional<HKSample> sample;
  std::optional<CellError> error;
  double wall_ms = 0;
};

enum class CheckStatus { pass, fail, error, reported };

std::string_view to_string(CheckStatus status);

struct LocusSummary {
  std::string id;
  std::string kind;
  std::string description;
  unsigned height = 0;
  std::string local_field;
};

struct EstimateEntry {
  std::string locus_id;
  std::optional<ConvergenceReport> report;
  std::optional<CellError> error;
};

struct MonotonicityEntry {
  std::vector<std::string> chain;
  std::uint64_t q = 0;
  std::optional<MonotonicityReport> report;
  std::optional<CellError> error;
};

struct ScanPointEntry {
  std::string locus_id;
  std::optional<ConvergenceReport> report;
  std::optional<Classification> classification;
  std::optional<CellError> error;
  // Per sampled q: does f_q(point) exceed f_q(base)?
  std::vector<std::pair<std::uint64_t, bool>> strict_excess;
};

struct ScanSection {
  std::string base;
  Rational epsilon;
  std::optional<ConvergenceReport> base_report;
  std::optional<CellError> base_error;
  std::vector<ScanPointEntry> points;
};

struct ParameterEntry {
  std::string locus_id;
  std::vector<std::string> parameters;
  std::vector<std::uint32_t> exponents;
  std::optional<ParameterMultiplicityReport> report;
  std::optional<CellError> error;
};

struct Provenance {
  std::string scenario;
  std::string config_hash;  // sha256 of print_config
  std::string engine_version;
  std::optional<std::uint64_t> degree_cap;
  unsigned jobs = 1;
  double total_ms = 0;
};

struct RunReport {
  std::vector<LocusSummary> loci;
  std::vector<Cell> cells;  // every (locus, q) sample, input order
  std::map<Check, CheckStatus> status;
  std::vector<EstimateEntry> estimates;
  std::vector<MonotonicityEntry> monotonicity;
  std::optional<ScanSection> scan;
  std::vector<ParameterEntry> parameters;
  Provenance provenance;

  /// 0 pass, 1 check failure, 3 resource exceeded.
  int exit_code() const;
};

struct RunOptions {
  unsigned jobs = 1;
  std::optional<std::uint64_t> degree_cap;
};

/// Runs every requested check. Cell failures are recorded, not thrown; only
/// invalid ring or locus data raises (ConfigError).
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

std::string engine_version();

/// Deterministic report text: sorted keys, rationals as {"num","den"}.
/// Timing lives under /provenance/timing (JSON) and is absent from CSV.
std::string render_report(const RunReport& report, OutputFormat format);

/// Writes render_report to `path` ("" or "-" for stdout). Throws IoError.
void emit_report(const RunReport& report, OutputFormat format, const std::string& path);

/// Names and JSON texts of the shipped scenarios.
std::vector<std::string> builtin_scenario_names();
std::optional<std::string> builtin_scenario(std::string_view name);

}  // namespace hklab
