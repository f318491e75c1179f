#pragma once

#include <cctype>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isores/error.hpp"
#include "isores/graph.hpp"
#include "isores/random.hpp"

namespace isores {

// A graph family with integer parameters, e.g. "circulant:16,1,3" or
// "union(complete:4,complete:4)".
struct FamilySpec {
  std::string name;
  std::vector<std::int64_t> args;
  std::vector<FamilySpec> parts;  // operands of a disjoint union

  std::string to_string() const {
    if (name == "union") return "union(" + parts.at(0).to_string() + "," + parts.at(1).to_string() + ")";
    std::string s = name;
    for (std::size_t i = 0; i < args.size(); ++i) s += (i == 0 ? ":" : ",") + std::to_string(args[i]);
    return s;
  }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FamilySpec parse() {
    FamilySpec spec = parse_spec();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParameterError("bad family spec '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FamilySpec parse_spec() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    FamilySpec spec;
    spec.name = std::string(text_.substr(start, pos_ - start));
    if (spec.name.empty()) fail("missing family name");
    if (spec.name == "disjoint_union") spec.name = "union";
    if (spec.name == "union") {
      if (!consume('(')) fail("expected '(' after union");
      spec.parts.push_back(parse_spec());
      if (!consume(',')) fail("expected ',' between union operands");
      spec.parts.push_back(parse_spec());
      if (!consume(')')) fail("expected ')' closing union");
      return spec;
    }
    if (consume(':')) {
      do {
        skip_space();
        std::size_t s = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (s == pos_) fail("expected an integer");
        spec.args.push_back(std::stoll(std::string(text_.substr(s, pos_ - s))));
      } while (consume_comma_before_integer());
    }
    return spec;
  }

  // Inside a union, "complete:4,complete:4" separates operands with the same
  // comma that separates integer arguments.
  bool consume_comma_before_integer() {
    const std::size_t saved = pos_;
    if (consume(',')) {
      skip_space();
      if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
        return true;
      }
    }
    pos_ = saved;
    return false;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

inline void require_args(const FamilySpec& s, std::size_t lo, std::size_t hi) {
  require(s.args.size() >= lo && s.args.size() <= hi,
          s.name + " expects " + std::to_string(lo) + (lo == hi ? "" : ".." + std::to_string(hi)) +
              " integer argument(s)");
}

// Smallest k with k^3 >= n^2, i.e. ceil(n^(2/3)) in exact arithmetic.
inline std::uint32_t ceil_two_thirds_power(std::uint64_t n) {
  const std::uint64_t target = n * n;
  std::uint64_t k = 0;
  while (k * k * k < target) ++k;
  return static_cast<std::uint32_t>(k);
}

}  // namespace detail

inline FamilySpec parse_family(std::string_view text) { return detail::SpecParser(text).parse(); }

// -- individual families -----------------------------------------------------

inline Graph path_graph(std::size_t n) {
  detail::require(n >= 1, "path requires n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1});
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(std::size_t n) {
  detail::require(n >= 3, "cycle requires n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n), 1});
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(std::size_t n) {
  detail::require(n >= 1, "complete requires n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j, 1});
  return Graph(n, std::move(edges));
}

// n x n grid, vertex r*n + c.
inline Graph grid2d_graph(std::size_t n) {
  detail::require(n >= 1, "grid2d requires n >= 1");
  std::vector<Edge> edges;
  for (Vertex r = 0; r < n; ++r) {
    for (Vertex c = 0; c < n; ++c) {
      const Vertex id = static_cast<Vertex>(r * n + c);
      if (c + 1 < n) edges.push_back({id, id + 1, 1});
      if (r + 1 < n) edges.push_back({id, static_cast<Vertex>(id + n), 1});
    }
  }
  return Graph(n * n, std::move(edges));
}

// n x n torus, vertex r*n + c. n >= 3 so wrap edges are distinct.
inline Graph torus2d_graph(std::size_t n) {
  detail::require(n >= 3, "torus2d requires n >= 3");
  std::vector<Edge> edges;
  for (Vertex r = 0; r < n; ++r) {
    for (Vertex c = 0; c < n; ++c) {
      const Vertex id = static_cast<Vertex>(r * n + c);
      edges.push_back({id, static_cast<Vertex>(r * n + (c + 1) % n), 1});
      edges.push_back({id, static_cast<Vertex>(((r + 1) % n) * n + c), 1});
    }
  }
  return Graph(n * n, std::move(edges));
}

// d-dimensional hypercube; vertex ids are the bitstrings.
inline Graph hypercube_graph(std::size_t d) {
  detail::require(d >= 1 && d <= 24, "hypercube requires 1 <= d <= 24");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x)
    for (std::size_t b = 0; b < d; ++b) {
      const Vertex y = x ^ (Vertex{1} << b);
      if (x < y) edges.push_back({x, y, 1});
    }
  return Graph(n, std::move(edges));
}

// i ~ i +- s (mod n) for each step s.
inline Graph circulant_graph(std::size_t n, const std::vector<std::int64_t>& steps) {
  detail::require(n >= 3, "circulant requires n >= 3");
  detail::require(!steps.empty(), "circulant requires at least one step");
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (auto raw : steps) {
    const auto s = static_cast<std::int64_t>(((raw % static_cast<std::int64_t>(n)) + n) % n);
    detail::require(s != 0, "circulant step must be nonzero mod n");
    for (Vertex i = 0; i < n; ++i) {
      const auto j = static_cast<Vertex>((i + s) % n);
      pairs.insert({std::min(i, j), std::max(i, j)});
    }
  }
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b, 1});
  return Graph(n, std::move(edges));
}

// Center 0 joined to leaves 1..n-1.
inline Graph star_graph(std::size_t n) {
  detail::require(n >= 1, "star requires n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.push_back({0, i, 1});
  return Graph(n, std::move(edges));
}

// Five layers of sizes 1, n, n^2, n, 1 with consecutive layers completely
// joined. Layer k occupies the id range layered_layer(n, k).
inline std::pair<Vertex, Vertex> layered_layer(std::size_t n, int layer) {
  const std::size_t sizes[5] = {1, n, n * n, n, 1};
  std::size_t start = 0;
  for (int k = 0; k < layer; ++k) start += sizes[k];
  return {static_cast<Vertex>(start), static_cast<Vertex>(start + sizes[layer])};
}

inline Graph layered_example_graph(std::size_t n) {
  detail::require(n >= 1, "layered requires n >= 1");
  const std::size_t total = n * n + 2 * n + 2;
  std::vector<Edge> edges;
  for (int k = 0; k < 4; ++k) {
    const auto [a0, a1] = layered_layer(n, k);
    const auto [b0, b1] = layered_layer(n, k + 1);
    for (Vertex x = a0; x < a1; ++x)
      for (Vertex y = b0; y < b1; ++y) edges.push_back({x, y, 1});
  }
  return Graph(total, std::move(edges));
}

// n-cycle whose every edge has multiplicity ceil(n^(2/3)).
inline Graph multi_edge_cycle_graph(std::size_t n) {
  detail::require(n >= 3, "multi_edge_cycle requires n >= 3");
  const auto k = detail::ceil_two_thirds_power(n);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n), k});
  return Graph(n, std::move(edges));
}

// Random labeled spanning tree plus `extra` distinct random chords.
inline Graph random_connected_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  detail::require(n >= 1, "random requires n >= 1");
  Rng rng(derive_seed(seed, {n, extra}));
  std::vector<Vertex> perm(n);
  for (Vertex i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::set<std::pair<Vertex, Vertex>> pairs;
  auto add = [&](Vertex a, Vertex b) { return pairs.insert({std::min(a, b), std::max(a, b)}).second; };
  for (std::size_t i = 1; i < n; ++i) add(perm[i], perm[rng.below(i)]);
  const std::size_t max_edges = n * (n - 1) / 2;
  const std::size_t target = std::min(max_edges, pairs.size() + extra);
  while (pairs.size() < target) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a != b) add(a, b);
  }
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({a, b, 1});
  return Graph(n, std::move(edges));
}

// Vertices of `b` are shifted by |a|.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  const auto shift = static_cast<Vertex>(a.vertex_count());
  for (const auto& e : b.edges()) edges.push_back({e.u + shift, e.v + shift, e.multiplicity});
  return Graph(a.vertex_count() + b.vertex_count(), std::move(edges));
}

inline Graph generate(const FamilySpec& spec) {
  using detail::require_args;
  auto arg = [&](std::size_t i) -> std::size_t {
    detail::require(spec.args.at(i) >= 0, spec.name + " arguments must be nonnegative");
    return static_cast<std::size_t>(spec.args[i]);
  };
  const auto& name = spec.name;
  if (name == "union") {
    detail::require(spec.parts.size() == 2, "union expects two operands");
    return disjoint_union(generate(spec.parts[0]), generate(spec.parts[1]));
  }
  if (name == "path") return require_args(spec, 1, 1), path_graph(arg(0));
  if (name == "cycle") return require_args(spec, 1, 1), cycle_graph(arg(0));
  if (name == "complete") return require_args(spec, 1, 1), complete_graph(arg(0));
  if (name == "grid2d" || name == "grid") return require_args(spec, 1, 1), grid2d_graph(arg(0));
  if (name == "torus2d" || name == "torus") return require_args(spec, 1, 1), torus2d_graph(arg(0));
  if (name == "hypercube") return require_args(spec, 1, 1), hypercube_graph(arg(0));
  if (name == "star") return require_args(spec, 1, 1), star_graph(arg(0));
  if (name == "layered" || name == "layered_example") return require_args(spec, 1, 1), layered_example_graph(arg(0));
  if (name == "multi_edge_cycle" || name == "multiedge") return require_args(spec, 1, 1), multi_edge_cycle_graph(arg(0));
  if (name == "circulant") {
    require_args(spec, 2, 64);
    return circulant_graph(arg(0), std::vector<std::int64_t>(spec.args.begin() + 1, spec.args.end()));
  }
  if (name == "random") {
    require_args(spec, 3, 3);
    return random_connected_graph(arg(0), arg(1), static_cast<std::uint64_t>(spec.args[2]));
  }
  throw ParameterError("unknown graph family '" + name + "'");
}

inline Graph generate(std::string_view text) { return generate(parse_family(text)); }

// Families whose members are vertex-transitive.
inline bool is_vertex_transitive_family(const FamilySpec& spec) {
  return spec.name == "cycle" || spec.name == "torus2d" || spec.name == "torus" || spec.name == "hypercube" ||
         spec.name == "circulant" || spec.name == "complete" || spec.name == "multi_edge_cycle" ||
         spec.name == "multiedge";
}

}  // namespace isores
