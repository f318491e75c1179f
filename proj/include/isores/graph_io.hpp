#pragma once

#include <charconv>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isores/error.hpp"
#include "isores/graph.hpp"

namespace isores {

// Text format: header "V E", then E lines "u v m" with u < v < V and m >= 1.
// Blank lines and lines starting with '#' are ignored.
inline Graph read_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;

  auto parse_fields = [](std::string_view line, std::vector<std::uint64_t>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i == line.size()) break;
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
      if (ec != std::errc() || ptr == line.data() + i) return false;
      out.push_back(value);
      i = static_cast<std::size_t>(ptr - line.data());
      if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') return false;
    }
    return true;
  };

  std::vector<std::uint64_t> fields;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    if (!parse_fields(line, fields)) throw ParseError(line_no, "expected whitespace-separated nonnegative integers");

    if (!have_header) {
      if (fields.size() != 2) throw ParseError(line_no, "header must be 'V E'");
      vertex_count = fields[0];
      edge_count = fields[1];
      have_header = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError(line_no, "edge line must be 'u v m'");
    const auto u = fields[0], v = fields[1], m = fields[2];
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
    if (u > v) throw ParseError(line_no, "edge endpoints must satisfy u < v");
    if (v >= vertex_count) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
    if (m == 0 || m > 0xffffffffULL) throw ParseError(line_no, "multiplicity must be in 1..2^32-1");
    if (!seen.insert({static_cast<Vertex>(u), static_cast<Vertex>(v)}).second) {
      throw ParseError(line_no, "duplicate edge record (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    if (edges.size() == edge_count) throw ParseError(line_no, "more edge lines than declared");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<std::uint32_t>(m)});
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (edges.size() != edge_count) {
    throw ParseError(line_no, "declared " + std::to_string(edge_count) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph(vertex_count, std::move(edges));
}

// Canonical serialization: records sorted by (u, v).
inline std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.multiplicity << '\n';
  return out.str();
}

}  // namespace isores
