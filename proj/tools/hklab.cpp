// hklab: command-line front end.
//
//   hklab gb <ring.json> --ideal "f, g, ..." [--order grevlex|lex]
//   hklab colength <ring.json> --ideal "f, g, ..."
//   hklab hkf <scenario> --locus <id> --e <n>
//   hklab scenario run <scenario> [--jobs N] [--degree-cap D] [--format json|csv] [--output PATH]
//   hklab scenario list
//   hklab scenario show <name>
//
// <scenario> is a JSON file or the name of a built-in scenario.
// Exit codes: 0 pass, 1 check failure, 2 config error, 3 resource exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hklab/error.hpp"
#include "hklab/groebner.hpp"
#include "hklab/parser.hpp"
#include "hklab/scenario.hpp"

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hklab::IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string load_scenario_text(const std::string& source) {
  if (std::ifstream(source).good()) return read_file(source);
  if (auto text = hklab::builtin_scenario(source)) return *text;
  throw hklab::IoError("'" + source + "' is neither a readable file nor a built-in scenario");
}

std::optional<std::uint64_t> degree_cap_from_env() {
  const char* value = std::getenv("HKLAB_DEGREE_CAP");
  if (value == nullptr || *value == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(value, &end, 10);
  if (*end != '\0') throw hklab::Error("ConfigError", "HKLAB_DEGREE_CAP must be a non-negative integer");
  return cap;
}

hklab::GroebnerBasis ideal_basis(const hklab::RingPresentation& ring, const std::string& ideal,
                                 hklab::MonomialOrder order, const hklab::GroebnerOptions& options) {
  std::vector<hklab::Polynomial> gens = ring.relations;
  for (auto& f : hklab::parse_polynomial_list(ideal, ring.ring)) {
    if (!f.is_zero()) gens.push_back(std::move(f));
  }
  if (gens.empty()) throw hklab::EmptyIdeal("the ideal has no nonzero generators");
  return hklab::buchberger(std::move(gens), order, options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hklab: exact Hilbert-Kunz computations in characteristic p"};
  app.require_subcommand(1);

  std::string ring_path;
  std::string ideal;
  std::string order_name = "grevlex";
  std::optional<std::uint64_t> degree_cap;

  auto* gb = app.add_subcommand("gb", "Reduced Groebner basis of J + (ideal)");
  gb->add_option("ring", ring_path, "Ring JSON file")->required();
  gb->add_option("--ideal", ideal, "Comma-separated generators")->required();
  gb->add_option("--order", order_name, "grevlex or lex");
  gb->add_option("--degree-cap", degree_cap, "Abort when intermediate degrees exceed this");

  auto* col = app.add_subcommand("colength", "dim_k of F[x]/(J + ideal), or 'infinite'");
  col->add_option("ring", ring_path, "Ring JSON file")->required();
  col->add_option("--ideal", ideal, "Comma-separated generators")->required();
  col->add_option("--degree-cap", degree_cap, "Abort when intermediate degrees exceed this");

  std::string scenario_source;
  std::string locus_id;
  unsigned e = 1;
  auto* hkf = app.add_subcommand("hkf", "Hilbert-Kunz function at one locus of a scenario");
  hkf->add_option("scenario", scenario_source, "Scenario JSON file or built-in name")->required();
  hkf->add_option("--locus", locus_id, "Locus id")->required();
  hkf->add_option("--e", e, "Exponent: q = p^e")->required()->check(CLI::PositiveNumber);
  hkf->add_option("--degree-cap", degree_cap, "Abort when intermediate degrees exceed this");

  auto* scenario = app.add_subcommand("scenario", "Run or inspect scenarios");
  scenario->require_subcommand(1);
  unsigned jobs = 1;
  std::string format_name;
  std::string output_path;
  bool output_set = false;
  auto* run = scenario->add_subcommand("run", "Run a scenario and emit its report");
  run->add_option("scenario", scenario_source, "Scenario JSON file or built-in name")->required();
  run->add_option("--jobs", jobs, "Worker threads for independent cells")->check(CLI::PositiveNumber);
  run->add_option("--degree-cap", degree_cap, "Abort cells whose intermediate degrees exceed this");
  run->add_option("--format", format_name, "json or csv (overrides the config)")
      ->check(CLI::IsMember({"json", "csv"}));
  auto* output_opt = run->add_option("--output", output_path, "Report path, '-' for stdout (overrides the config)");
  auto* list = scenario->add_subcommand("list", "List built-in scenarios");
  std::string show_name;
  auto* show = scenario->add_subcommand("show", "Print a built-in scenario");
  show->add_option("name", show_name, "Built-in scenario name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!degree_cap) degree_cap = degree_cap_from_env();
    hklab::GroebnerOptions groebner;
    groebner.degree_cap = degree_cap;

    if (*gb) {
      const auto ring = hklab::parse_ring(read_file(ring_path));
      const auto basis = ideal_basis(ring, ideal, hklab::parse_monomial_order(order_name), groebner);
      std::cout << basis.to_string();
      return 0;
    }
    if (*col) {
      const auto ring = hklab::parse_ring(read_file(ring_path));
      const auto basis = ideal_basis(ring, ideal, hklab::MonomialOrder::grevlex, groebner);
      const auto result = hklab::colength(basis, 0);
      if (result.value) {
        std::cout << *result.value << '\n';
      } else {
        std::cout << "infinite\n";
      }
      return 0;
    }
    if (*hkf) {
      const auto config = hklab::parse_config(load_scenario_text(scenario_source));
      const auto compiled = hklab::compile_scenario(config);
      const auto it = compiled.locus_index.find(locus_id);
      if (it == compiled.locus_index.end()) {
        std::cerr << "error: unknown locus '" << locus_id << "'\n";
        return kExitConfigError;
      }
      std::uint64_t q = 1;
      for (unsigned k = 0; k < e; ++k) q *= compiled.ring.characteristic();
      const auto sample = hklab::hk_sample(compiled.ring, compiled.loci[it->second], q, groebner);
      std::cout << "locus " << locus_id << ' ' << compiled.loci[it->second].describe(compiled.ring) << '\n'
                << "q " << sample.q << '\n'
                << "colength " << sample.colength << '\n'
                << "height " << sample.height << '\n'
                << "f_q " << hklab::to_string(sample.value) << '\n';
      return 0;
    }
    if (*list) {
      for (const auto& name : hklab::builtin_scenario_names()) std::cout << name << '\n';
      return 0;
    }
    if (*show) {
      const auto text = hklab::builtin_scenario(show_name);
      if (!text) {
        std::cerr << "error: no built-in scenario named '" << show_name << "'\n";
        return kExitConfigError;
      }
      std::cout << *text << '\n';
      return 0;
    }
    if (*run) {
      output_set = output_opt->count() > 0;
      const auto config = hklab::parse_config(load_scenario_text(scenario_source));
      hklab::RunOptions options;
      options.jobs = jobs;
      options.degree_cap = degree_cap;
      const auto report = hklab::run_scenario(config, options);
      hklab::OutputFormat format = config.output.format;
      if (format_name == "json") format = hklab::OutputFormat::json;
      if (format_name == "csv") format = hklab::OutputFormat::csv;
      hklab::emit_report(report, format, output_set ? output_path : config.output.path);
      return report.exit_code();
    }
  } catch (const hklab::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const hklab::ResourceExceeded& e) {
    std::cerr << "error: ResourceExceeded: " << e.what() << '\n';
    return kExitResource;
  } catch (const hklab::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return e.kind() == "ResourceExceeded" ? kExitResource : kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return 0;
}
