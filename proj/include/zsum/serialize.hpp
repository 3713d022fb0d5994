#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsum/count.hpp"
#include "zsum/invariants.hpp"
#include "zsum/sequence.hpp"
#include "zsum/smoothness.hpp"
#include "zsum/verify.hpp"

// Output conventions: exact counts always travel as decimal strings, JSON
// objects keep their keys sorted (the default map-backed nlohmann type), and
// timing is attached only on request so that repeated runs produce identical
// bytes.

namespace zsum {

inline nlohmann::json to_json(const SmoothCertificate& cert) {
  nlohmann::json j;
  j["generator"] = cert.generator;
  j["coefficients"] = cert.coefficients;
  j["signs"] = cert.signs;
  return j;
}

inline nlohmann::json to_json(const TheoremBDecomposition& d) {
  nlohmann::json j;
  j["generator"] = d.generator;
  j["u"] = d.u;
  j["v"] = d.v;
  j["x"] = d.xs;
  j["y"] = d.ys;
  return j;
}

inline nlohmann::json to_json(const InvariantResult& res) {
  nlohmann::json j;
  j["name"] = res.name;
  j["k"] = res.k;
  j["n"] = res.n;
  j["closed_form"] = to_decimal(res.closed_form);
  if (res.exhaustive) j["exhaustive"] = to_decimal(*res.exhaustive);
  if (res.witness) j["witness"] = detail::print_terms(*res.witness);
  return j;
}

inline nlohmann::json to_json(const VerificationReport& rep,
                              bool with_timing = false) {
  nlohmann::json j;
  j["suite"] = rep.suite;
  nlohmann::json grid = nlohmann::json::object();
  for (const auto& [key, value] : rep.grid) grid[key] = value;
  j["grid"] = grid;
  j["instances_checked"] = rep.instances_checked;
  j["failure_count"] = rep.failure_count;
  j["pass"] = rep.pass();
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : rep.failures) {
    nlohmann::json row;
    row["sequence"] = f.sequence;
    row["expected"] = f.expected;
    row["actual"] = f.actual;
    fails.push_back(row);
  }
  j["failures"] = fails;
  if (!rep.data.empty()) {
    nlohmann::json data = nlohmann::json::object();
    for (const auto& [key, value] : rep.data) data[key] = value;
    j["data"] = data;
  }
  if (with_timing) j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

inline std::string invariants_to_csv(const std::vector<InvariantResult>& rows) {
  std::string out = csv_row({"name", "k", "n", "closed_form", "exhaustive", "witness"});
  for (const auto& r : rows)
    out += csv_row({r.name, std::to_string(r.k), std::to_string(r.n),
                    to_decimal(r.closed_form),
                    r.exhaustive ? to_decimal(*r.exhaustive) : "",
                    r.witness ? detail::print_terms(*r.witness) : ""});
  return out;
}

inline std::string report_to_csv(const VerificationReport& rep) {
  std::string out = csv_row({"sequence", "expected", "actual"});
  for (const auto& f : rep.failures) out += csv_row({f.sequence, f.expected, f.actual});
  return out;
}

namespace detail {

inline std::string pad_right(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return s + std::string(width - s.size(), ' ');
}

inline std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += i + 1 < row.size() ? pad_right(row[i], width[i]) : row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace detail

inline std::string invariants_to_table(const std::vector<InvariantResult>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"name", "k", "n", "closed_form", "exhaustive", "witness"});
  for (const auto& r : rows)
    cells.push_back({r.name, std::to_string(r.k), std::to_string(r.n),
                     to_decimal(r.closed_form),
                     r.exhaustive ? to_decimal(*r.exhaustive) : "-",
                     r.witness ? detail::print_terms(*r.witness) : "-"});
  return detail::render_columns(cells);
}

inline std::string report_to_table(const VerificationReport& rep,
                                   bool with_timing = false) {
  std::ostringstream out;
  out << "suite: " << rep.suite << "\n";
  for (const auto& [key, value] : rep.grid) out << key << ": " << value << "\n";
  out << "instances_checked: " << rep.instances_checked << "\n";
  out << "failure_count: " << rep.failure_count << "\n";
  for (const auto& [key, value] : rep.data) out << key << ": " << value << "\n";
  if (with_timing) out << "elapsed_ms: " << rep.elapsed_ms << "\n";
  out << "result: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
  if (!rep.failures.empty()) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"sequence", "expected", "actual"});
    for (const auto& f : rep.failures)
      cells.push_back({f.sequence, f.expected, f.actual});
    out << detail::render_columns(cells);
  }
  return out.str();
}

}  // namespace zsum
