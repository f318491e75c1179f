#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isores/error.hpp"

namespace isores {

using Vertex = std::uint32_t;
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// One bundle of `multiplicity` parallel unit resistors between u and v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t multiplicity = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  std::uint32_t multiplicity;
};

// Finite undirected multigraph on vertices 0..vertex_count-1. Parallel edges
// are folded into one record with a multiplicity; self-loops are rejected.
// Immutable after construction. Edge records are stored canonically
// (u < v, sorted by (u, v)).
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count) {
    for (auto& e : edges) {
      if (e.u >= vertex_count || e.v >= vertex_count) {
        throw ParameterError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") references a vertex outside 0.." +
                             std::to_string(vertex_count == 0 ? 0 : vertex_count - 1));
      }
      if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
      if (e.multiplicity == 0) throw ParameterError("edge multiplicity must be positive");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
        throw ParameterError("duplicate edge record (" + std::to_string(edges[i].u) + "," +
                             std::to_string(edges[i].v) + ")");
      }
    }
    edges_ = std::move(edges);

    offsets_.assign(vertex_count_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < vertex_count_; ++i) offsets_[i + 1] += offsets_[i];
    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
      adjacency_[fill[e.u]++] = {e.v, e.multiplicity};
      adjacency_[fill[e.v]++] = {e.u, e.multiplicity};
    }
    for (std::size_t v = 0; v < vertex_count_; ++v) {
      std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    }
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  // Number of distinct neighbors (multiplicity ignored).
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Total conductance at v.
  double weighted_degree(Vertex v) const {
    double d = 0.0;
    for (const auto& nb : neighbors(v)) d += nb.multiplicity;
    return d;
  }

  std::uint64_t total_multiplicity() const {
    std::uint64_t t = 0;
    for (const auto& e : edges_) t += e.multiplicity;
    return t;
  }

  bool contains(Vertex v) const noexcept { return v < vertex_count_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Neighbor> adjacency_;
};

// A sorted set of distinct vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}
  explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const Vertex> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

inline void check_members(const Graph& g, const VertexSet& a) {
  if (!a.empty() && !g.contains(a.members().back())) {
    throw ParameterError("vertex " + std::to_string(a.members().back()) + " out of range");
  }
}

inline void check_vertex(const Graph& g, Vertex v) {
  if (!g.contains(v)) throw ParameterError("vertex " + std::to_string(v) + " out of range");
}

inline std::vector<char> membership(const Graph& g, const VertexSet& a) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : a) in[v] = 1;
  return in;
}

// Vertices outside A with at least one neighbor in A.
inline VertexSet external_boundary(const Graph& g, const VertexSet& a) {
  check_members(g, a);
  const auto in = membership(g, a);
  std::vector<Vertex> out;
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v : a) {
    for (const auto& nb : g.neighbors(v)) {
      if (!in[nb.vertex] && !seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        out.push_back(nb.vertex);
      }
    }
  }
  return VertexSet(std::move(out));
}

inline std::size_t boundary_size(const Graph& g, const VertexSet& a) {
  return external_boundary(g, a).size();
}

// True iff the induced subgraph on A is connected. The empty set is not.
inline bool is_connected_subset(const Graph& g, const VertexSet& a) {
  check_members(g, a);
  if (a.empty()) return false;
  const auto in = membership(g, a);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> stack{*a.begin()};
  seen[*a.begin()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(x)) {
      if (in[nb.vertex] && !seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == a.size();
}

// Breadth-first distances from `source`; kUnreachable outside its component.
inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  check_vertex(g, source);
  std::vector<std::size_t> dist(g.vertex_count(), kUnreachable);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(x)) {
      if (dist[nb.vertex] == kUnreachable) {
        dist[nb.vertex] = dist[x] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return dist;
}

// Vertices in breadth-first discovery order from `source` (neighbors visited
// in increasing id order).
inline std::vector<Vertex> bfs_order(const Graph& g, Vertex source) {
  check_vertex(g, source);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> order{source};
  seen[source] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& nb : g.neighbors(order[head])) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        order.push_back(nb.vertex);
      }
    }
  }
  return order;
}

// Component label per vertex, labels numbered in order of smallest member.
inline std::vector<std::size_t> component_labels(const Graph& g) {
  std::vector<std::size_t> label(g.vertex_count(), kUnreachable);
  std::size_t next = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnreachable) continue;
    for (Vertex x : bfs_order(g, s)) label[x] = next;
    ++next;
  }
  return label;
}

inline bool is_connected(const Graph& g) {
  return g.vertex_count() > 0 && bfs_order(g, 0).size() == g.vertex_count();
}

inline VertexSet component_of(const Graph& g, Vertex v) { return VertexSet(bfs_order(g, v)); }

inline std::size_t eccentricity(const Graph& g, Vertex v) {
  std::size_t ecc = 0;
  for (auto d : bfs_distances(g, v)) {
    if (d != kUnreachable) ecc = std::max(ecc, d);
  }
  return ecc;
}

// Exact diameter of a connected graph by all-sources BFS.
inline std::size_t diameter(const Graph& g) {
  if (!is_connected(g)) throw ParameterError("diameter requires a connected graph");
  std::size_t d = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) d = std::max(d, eccentricity(g, v));
  return d;
}

struct FarPair {
  Vertex a = 0;
  Vertex b = 0;
  std::size_t distance = 0;
};

// Double-sweep BFS: farthest vertex from `start`, then farthest from that.
// Ties resolve to the smallest id.
inline FarPair double_sweep(const Graph& g, Vertex start) {
  auto farthest = [&](Vertex s) {
    const auto dist = bfs_distances(g, s);
    Vertex best = s;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
      if (dist[x] != kUnreachable && dist[x] > dist[best]) best = x;
    }
    return std::pair(best, dist[best]);
  };
  const Vertex a = farthest(start).first;
  const auto [b, d] = farthest(a);
  return {a, b, d};
}

// Subgraph induced on `keep`, relabeled densely in increasing id order.
// `old_ids[i]` is the original id of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> old_ids;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  check_members(g, keep);
  std::vector<Vertex> new_id(g.vertex_count(), std::numeric_limits<Vertex>::max());
  std::vector<Vertex> old_ids(keep.begin(), keep.end());
  for (std::size_t i = 0; i < old_ids.size(); ++i) new_id[old_ids[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (new_id[e.u] != std::numeric_limits<Vertex>::max() &&
        new_id[e.v] != std::numeric_limits<Vertex>::max()) {
      edges.push_back({new_id[e.u], new_id[e.v], e.multiplicity});
    }
  }
  return {Graph(old_ids.size(), std::move(edges)), std::move(old_ids)};
}

// Copy of g with every multiplicity multiplied by k.
inline Graph scale_multiplicities(const Graph& g, std::uint32_t k) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.multiplicity *= k;
  return Graph(g.vertex_count(), std::move(edges));
}

// Copy of g without the edge record at `index`.
inline Graph remove_edge_record(const Graph& g, std::size_t index) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(index));
  return Graph(g.vertex_count(), std::move(edges));
}

// Copy of g with vertex v renamed to perm[v].
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.vertex_count()) throw ParameterError("permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.multiplicity});
  return Graph(g.vertex_count(), std::move(edges));
}

}  // namespace isores
