#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hklab/error.hpp"
#include "hklab/scenario.hpp"
#include "json.hpp"

using namespace hklab;
using json = nlohmann::json;

namespace {

std::vector<ConfigIssue> issues_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(const std::vector<ConfigIssue>& issues, std::string_view pointer) {
  return std::any_of(issues.begin(), issues.end(), [&](const ConfigIssue& i) { return i.pointer == pointer; });
}

std::string without_timing(const std::string& report_json) {
  json doc = json::parse(report_json);
  doc["provenance"].erase("timing");
  return doc.dump(2);
}

std::string minimal(std::string_view ring, std::string_view extra = "") {
  return std::string(R"({"ring": )") + std::string(ring) +
         R"(, "loci": [{"id": "o", "kind": "maximal_point", "coordinates": ["0", "0"]}],
             "q_exponents": [1, 2], "checks": ["hkf"])" +
         std::string(extra) + "}";
}

}  // namespace

TEST_CASE("built-in scenarios parse") {
  const auto names = builtin_scenario_names();
  CHECK(names == std::vector<std::string>{"brenner_monsky", "cusp_curve", "node_curve", "regular_baseline"});
  const auto bm = parse_config(*builtin_scenario("brenner_monsky"));
  CHECK(bm.ring.relations == std::vector<std::string>{"z^4+x*y*z^2+(x^3+y^3)*z+t*x^2*y^2"});
  REQUIRE(bm.loci.size() == 5);
  CHECK(bm.loci[0].kind == LocusKind::coordinate_prime);
  CHECK(bm.loci[0].variables == std::vector<std::string>{"x", "y", "z"});
  CHECK(bm.loci[3].extension_degree == 2u);
  CHECK_FALSE(builtin_scenario("nope"));
}

TEST_CASE("config round trip") {
  for (const auto& name : builtin_scenario_names()) {
    const auto config = parse_config(*builtin_scenario(name));
    const auto printed = print_config(config);
    CHECK(parse_config(printed) == config);
    CHECK(print_config(parse_config(printed)) == printed);
  }
}

TEST_CASE("validation collects every problem") {
  CHECK(issues_of(minimal(R"({"characteristic": 2, "variables": ["x", "y"], "relations": []})")).empty());

  const auto unknown = issues_of(minimal(R"({"characteristic": 2, "variables": ["x", "y"], "relations": ["w*x"]})"));
  CHECK(has_issue(unknown, "/ring/relations/0"));

  const auto many = issues_of(R"({"ring": {"characteristic": 4, "variables": ["x"]}, "q_exponents": [2, 1],
                                   "checks": ["hkf", "bogus"], "colour": 1})");
  CHECK(has_issue(many, "/checks/1"));
  CHECK(has_issue(many, "/colour"));
  CHECK(many.size() >= 2);

  const auto semantic = issues_of(R"({"ring": {"characteristic": 4, "variables": ["x"]}, "q_exponents": [2, 1],
                                       "checks": ["hkf"]})");
  CHECK(has_issue(semantic, "/ring/characteristic"));

  const auto order = issues_of(R"({"ring": {"characteristic": 2, "variables": ["x"]}, "q_exponents": [2, 1],
                                    "checks": ["hkf"]})");
  CHECK(has_issue(order, "/q_exponents/1"));

  const auto equidim = issues_of(minimal(R"({"characteristic": 2, "variables": ["x", "y"], "relations": ["x*y", "x^2"]})"));
  CHECK(has_issue(equidim, "/assert_equidimensional"));

  const auto off_curve = issues_of(R"({"ring": {"characteristic": 2, "variables": ["x", "y"], "relations": ["x*y"]},
      "loci": [{"id": "p", "kind": "maximal_point", "coordinates": ["1", "1"]}],
      "q_exponents": [1], "checks": ["hkf"]})");
  CHECK(has_issue(off_curve, "/loci/0"));

  const auto scan = issues_of(minimal(R"({"characteristic": 2, "variables": ["x", "y"]})",
                                      R"(, "scan": {"base": "o", "points": ["missing"]})"));
  CHECK(scan.empty());  // scan not requested

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
}

TEST_CASE("rings from JSON") {
  const auto ring = parse_ring(R"({"characteristic": 2, "parameter": "t", "variables": ["x"], "relations": ["t*x^2"]})");
  CHECK(ring.field().to_string() == "GF(2)(t)");
  CHECK(ring.relations.size() == 1);
  CHECK(parse_ring(*builtin_scenario("node_curve")).relations[0].to_string() == "x*y");
  CHECK_THROWS_AS(parse_ring(R"({"characteristic": 2})"), ConfigError);
}

TEST_CASE("regular baseline run") {
  const auto report = run_scenario(parse_config(*builtin_scenario("regular_baseline")));
  REQUIRE(report.cells.size() == 4);
  for (const auto& cell : report.cells) {
    REQUIRE(cell.sample);
    CHECK(cell.sample->value == 1);
  }
  CHECK(report.status.at(Check::hkf) == CheckStatus::pass);
  CHECK(report.exit_code() == 0);
}

TEST_CASE("node curve run") {
  const auto report = run_scenario(parse_config(*builtin_scenario("node_curve")));
  for (const auto& cell : report.cells) {
    REQUIRE(cell.sample);
    if (cell.locus_id == "origin") CHECK(cell.sample->colength == 2 * cell.q - 1);
  }
  const auto origin = std::find_if(report.estimates.begin(), report.estimates.end(),
                                   [](const auto& e) { return e.locus_id == "origin"; });
  REQUIRE(origin != report.estimates.end());
  REQUIRE(origin->report);
  CHECK(origin->report->bracket_lo <= 2);
  CHECK(origin->report->bracket_hi >= 2);
  CHECK(report.status.at(Check::monotonicity) == CheckStatus::pass);
  CHECK(report.status.at(Check::scan) == CheckStatus::reported);
  CHECK(report.status.at(Check::parameter_multiplicity) == CheckStatus::pass);
  CHECK(report.exit_code() == 0);

  std::istringstream csv(render_report(report, OutputFormat::csv));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "locus_id,q,colength,height,f_q_num,f_q_den,bracket_lo,bracket_hi,classification");
  int origin_rows = 0;
  while (std::getline(csv, line)) {
    if (line.rfind("origin,", 0) != 0) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    const auto q = std::stoull(fields[1]);
    CHECK(fields[4] == std::to_string(2 * q - 1));
    CHECK(fields[5] == std::to_string(q));
    CHECK(fields[8] == "ABOVE");
    ++origin_rows;
  }
  CHECK(origin_rows == 6);
}

TEST_CASE("report emission") {
  RunReport empty;
  const json doc = json::parse(render_report(empty, OutputFormat::json));
  CHECK(doc.size() == 1);
  CHECK(doc.contains("provenance"));

  const auto config = parse_config(*builtin_scenario("node_curve"));
  const auto a = run_scenario(config);
  const auto b = run_scenario(config, RunOptions{2, std::nullopt});
  CHECK(render_report(a, OutputFormat::json) == render_report(a, OutputFormat::json));
  CHECK(without_timing(render_report(a, OutputFormat::json)) == without_timing(render_report(b, OutputFormat::json)));
  CHECK(render_report(a, OutputFormat::csv) == render_report(b, OutputFormat::csv));
  CHECK(a.provenance.config_hash.size() == 64);
  CHECK(a.provenance.engine_version == engine_version());

  const auto path = std::filesystem::temp_directory_path() / "hklab_report_test.json";
  emit_report(a, OutputFormat::json, path.string());
  std::ifstream in(path);
  std::stringstream written;
  written << in.rdbuf();
  CHECK(written.str() == render_report(a, OutputFormat::json));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_report(a, OutputFormat::json, "/nonexistent-dir/report.json"), IoError);
}

TEST_CASE("cell failures are recorded, not thrown") {
  const auto config = parse_config(*builtin_scenario("brenner_monsky"));
  const auto report = run_scenario(config, RunOptions{1, 6});
  bool saw_resource = false;
  for (const auto& cell : report.cells) {
    if (cell.error) {
      CHECK(cell.error->kind == "ResourceExceeded");
      saw_resource = true;
    }
  }
  CHECK(saw_resource);
  CHECK(report.exit_code() == 3);
  const auto text = render_report(report, OutputFormat::json);
  CHECK(text.find("\"class\": \"ResourceExceeded\"") != std::string::npos);
  CHECK(render_report(report, OutputFormat::csv).find("error:ResourceExceeded") != std::string::npos);
}
