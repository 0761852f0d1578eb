#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hklab/error.hpp"
#include "hklab/scenario.hpp"
#include "json.hpp"

namespace hklab {

using json = nlohmann::json;

namespace {

json rational_json(const Rational& r) { return {{"num", numerator_string(r)}, {"den", denominator_string(r)}}; }

json error_json(const CellError& e) { return {{"class", e.kind}, {"message", e.message}}; }

json convergence_json(const ConvergenceReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"q", s.q}, {"colength", s.colength}, {"f_q", rational_json(s.value)}});
  }
  return {{"height", r.height},
          {"samples", std::move(samples)},
          {"c_hat", rational_json(r.c_hat)},
          {"bracket_lo", rational_json(r.bracket_lo)},
          {"bracket_hi", rational_json(r.bracket_hi)},
          {"heuristic", r.heuristic}};
}

json report_json(const RunReport& report) {
  json doc = json::object();
  if (!report.loci.empty()) {
    json loci = json::array();
    for (const auto& l : report.loci) {
      loci.push_back({{"id", l.id},
                      {"kind", l.kind},
                      {"prime", l.description},
                      {"height", l.height},
                      {"local_field", l.local_field}});
    }
    doc["loci"] = std::move(loci);
  }
  if (!report.status.empty()) {
    json status = json::object();
    for (const auto& [check, s] : report.status) status[std::string(to_string(check))] = std::string(to_string(s));
    doc["status"] = std::move(status);
  }
  if (!report.cells.empty()) {
    json cells = json::array();
    for (const auto& c : report.cells) {
      json cell = {{"locus_id", c.locus_id}, {"q", c.q}};
      if (c.sample) {
        cell["colength"] = c.sample->colength;
        cell["height"] = c.sample->height;
        cell["f_q"] = rational_json(c.sample->value);
      }
      if (c.error) cell["error"] = error_json(*c.error);
      cells.push_back(std::move(cell));
    }
    doc["samples"] = std::move(cells);
  }
  if (!report.estimates.empty()) {
    json entries = json::array();
    for (const auto& e : report.estimates) {
      json entry = {{"locus_id", e.locus_id}};
      if (e.report) entry["estimate"] = convergence_json(*e.report);
      if (e.error) entry["error"] = error_json(*e.error);
      entries.push_back(std::move(entry));
    }
    doc["estimate"] = std::move(entries);
  }
  if (!report.monotonicity.empty()) {
    json entries = json::array();
    for (const auto& m : report.monotonicity) {
      json entry = {{"chain", m.chain}, {"q", m.q}};
      if (m.report) {
        json links = json::array();
        for (const auto& link : m.report->links) {
          links.push_back({{"lower", m.chain[link.lower]},
                           {"upper", m.chain[link.upper]},
                           {"f_lower", rational_json(link.f_lower)},
                           {"f_upper", rational_json(link.f_upper)},
                           {"holds", link.holds}});
        }
        entry["links"] = std::move(links);
        entry["pass"] = m.report->pass;
      }
      if (m.error) entry["error"] = error_json(*m.error);
      entries.push_back(std::move(entry));
    }
    doc["monotonicity"] = std::move(entries);
  }
  if (report.scan) {
    const ScanSection& scan = *report.scan;
    json section = {{"base", scan.base}, {"epsilon", rational_json(scan.epsilon)}};
    if (scan.base_report) section["base_estimate"] = convergence_json(*scan.base_report);
    if (scan.base_error) section["base_error"] = error_json(*scan.base_error);
    json points = json::array();
    bool all_strict = !scan.points.empty();
    for (const auto& p : scan.points) {
      json entry = {{"locus_id", p.locus_id}};
      if (p.report) entry["estimate"] = convergence_json(*p.report);
      if (p.classification) entry["classification"] = std::string(to_string(*p.classification));
      if (p.error) entry["error"] = error_json(*p.error);
      json excess = json::array();
      for (const auto& [q, strict] : p.strict_excess) excess.push_back({{"q", q}, {"strict", strict}});
      entry["strict_excess"] = std::move(excess);
      all_strict = all_strict && !p.strict_excess.empty() && p.strict_excess.back().second;
      points.push_back(std::move(entry));
    }
    section["points"] = std::move(points);
    section["all_strict_at_largest_q"] = all_strict;
    doc["scan"] = std::move(section);
  }
  if (!report.parameters.empty()) {
    json entries = json::array();
    for (const auto& p : report.parameters) {
      json entry = {{"locus_id", p.locus_id}, {"parameters", p.parameters}, {"exponents", p.exponents}};
      if (p.report) {
        entry["length_parameters"] = p.report->length_parameters;
        entry["length_powered"] = p.report->length_powered;
        entry["exponent_product"] = p.report->exponent_product;
        entry["holds"] = p.report->holds;
      }
      if (p.error) entry["error"] = error_json(*p.error);
      entries.push_back(std::move(entry));
    }
    doc["parameter_multiplicity"] = std::move(entries);
  }

  const Provenance& prov = report.provenance;
  json timing = {{"total_ms", prov.total_ms}, {"jobs", prov.jobs}};
  json cell_times = json::array();
  for (const auto& c : report.cells) cell_times.push_back({{"locus_id", c.locus_id}, {"q", c.q}, {"wall_ms", c.wall_ms}});
  timing["cells"] = std::move(cell_times);
  doc["provenance"] = {{"scenario", prov.scenario},
                       {"config_hash", prov.config_hash},
                       {"engine_version", prov.engine_version},
                       {"degree_cap", prov.degree_cap ? json(*prov.degree_cap) : json(nullptr)},
                       {"timing", std::move(timing)}};
  return doc;
}

std::string report_csv(const RunReport& report) {
  std::map<std::string, const ConvergenceReport*> brackets;
  std::map<std::string, std::string> classes;
  if (report.scan) {
    if (report.scan->base_report) brackets[report.scan->base] = &*report.scan->base_report;
    for (const auto& p : report.scan->points) {
      if (p.report) brackets[p.locus_id] = &*p.report;
      if (p.classification) classes[p.locus_id] = std::string(to_string(*p.classification));
    }
  }
  for (const auto& e : report.estimates) {
    if (e.report) brackets[e.locus_id] = &*e.report;
  }
  std::ostringstream out;
  out << "locus_id,q,colength,height,f_q_num,f_q_den,bracket_lo,bracket_hi,classification\n";
  for (const auto& c : report.cells) {
    out << c.locus_id << ',' << c.q << ',';
    if (c.sample) {
      out << c.sample->colength << ',' << c.sample->height << ',' << numerator_string(c.sample->value) << ','
          << denominator_string(c.sample->value) << ',';
    } else {
      out << ",,,,";
    }
    const auto b = brackets.find(c.locus_id);
    if (b != brackets.end()) {
      out << to_string(b->second->bracket_lo) << ',' << to_string(b->second->bracket_hi) << ',';
    } else {
      out << ",,";
    }
    if (c.error) {
      out << "error:" << c.error->kind;
    } else if (const auto k = classes.find(c.locus_id); k != classes.end()) {
      out << k->second;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string render_report(const RunReport& report, OutputFormat format) {
  if (format == OutputFormat::csv) return report_csv(report);
  return report_json(report).dump(2) + "\n";
}

void emit_report(const RunReport& report, OutputFormat format, const std::string& path) {
  const std::string text = render_report(report, format);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed to write the report to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed to write '" + path + "'");
}

}  // namespace hklab
