#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "isores/electrical.hpp"
#include "isores/isoperimetry.hpp"
#include "json.hpp"

namespace isores {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

// Extended reals: +inf is written as the string "inf".
inline Json ext(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline Json to_json(const VertexSet& s) { return Json(std::vector<Vertex>(s.begin(), s.end())); }

inline Json to_json(const Band& b) { return Json::array({b.lo, b.hi}); }

inline Json to_json(const BandTerm& t) {
  Json j;
  j["n"] = t.band.n;
  j["band"] = to_json(t.band);
  j["set"] = to_json(t.best_set);
  j["boundary"] = t.boundary;
  j["term"] = t.empty ? Json(0.0) : ext(t.term);
  if (t.empty) j["empty"] = true;
  return j;
}

inline Json to_json(const IsoBound& b) {
  Json j;
  j["v"] = b.anchor;
  j["terms"] = Json::array();
  for (const auto& t : b.terms) j["terms"].push_back(to_json(t));
  j["total"] = ext(b.total);
  j["mode"] = to_string(b.mode);
  if (b.modified) j["modified"] = true;
  return j;
}

inline Json to_json(const VoltageProfile& p, std::size_t vertex_count) {
  Json j;
  j["w"] = p.source;
  j["u"] = p.sink;
  Json volts = Json::array();
  const VertexSet comp(p.component);
  for (Vertex v = 0; v < vertex_count; ++v) volts.push_back(comp.contains(v) ? Json(p.voltages[v]) : Json(nullptr));
  j["voltages"] = std::move(volts);
  j["current"] = p.current;
  j["resistance"] = ext(1.0 / p.current);
  j["residual"] = p.residual;
  return j;
}

// An experiment's output: the config it ran with, summary statistics and one
// record per trial (or per graph / pair).
struct Report {
  std::string command;
  Json config = Json::object();
  Json summary = Json::object();
  Json rows = Json::array();
};

inline Json report_json(const Report& r, std::optional<double> wall_time_s = std::nullopt) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  j["config"] = r.config;
  j["results"] = {{"summary", r.summary}, {"rows", r.rows}};
  if (wall_time_s) j["wall_time_s"] = *wall_time_s;
  return j;
}

// Everything except wall time; identical config and seed give identical bytes.
inline std::string report_body(const Report& r) { return report_json(r).dump(2); }

inline Json error_json(const std::string& command, const Error& e) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
  return j;
}

namespace detail {

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    out.emplace_back(prefix, j);
  }
}

inline std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? std::string() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

// Two blocks separated by a blank line: "field,value" summary lines, then
// one row per record under a header of flattened keys. Cells use the same
// number formatting as the JSON output.
inline std::string report_csv(const Report& r) {
  std::string out = "field,value\n";
  std::vector<std::pair<std::string, Json>> summary;
  detail::flatten(r.summary, "", summary);
  for (const auto& [k, v] : summary) out += detail::csv_cell(k) + "," + detail::csv_cell(v) + "\n";
  if (r.rows.empty()) return out;

  std::vector<std::vector<std::pair<std::string, Json>>> rows;
  std::vector<std::string> header;
  for (const auto& row : r.rows) {
    rows.emplace_back();
    detail::flatten(row, "", rows.back());
    for (const auto& [k, v] : rows.back())
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  }
  out += "\n";
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + detail::csv_cell(header[i]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ",";
      for (const auto& [k, v] : row)
        if (k == header[i]) {
          out += detail::csv_cell(v);
          break;
        }
    }
    out += "\n";
  }
  return out;
}

}  // namespace isores
