#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "isores/error.hpp"
#include "isores/graph.hpp"
#include "isores/laplacian.hpp"

namespace isores {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Voltages for a unit battery with V(source) = 1 and V(sink) = 0.
struct VoltageProfile {
  Vertex source = 0;
  Vertex sink = 0;
  std::vector<double> voltages;  // 0 outside the battery's component
  double current = 0.0;          // total current leaving the source
  double residual = 0.0;
  std::vector<Vertex> component;  // sorted vertices of the battery's component
  std::size_t iterations = 0;
  bool dense = false;
};

// Throws InfiniteResistance when w and u lie in different components.
inline VoltageProfile solve_voltages(const Graph& g, Vertex w, Vertex u, const SolverOptions& options = {}) {
  check_vertex(g, w);
  check_vertex(g, u);
  if (w == u) throw ParameterError("battery endpoints must differ");
  auto component = bfs_order(g, u);
  if (std::find(component.begin(), component.end(), w) == component.end()) throw InfiniteResistance();
  std::sort(component.begin(), component.end());

  const std::pair<Vertex, double> pinned[] = {{w, 1.0}, {u, 0.0}};
  auto solution = solve_dirichlet(g, component, pinned, {}, options);

  VoltageProfile profile;
  profile.source = w;
  profile.sink = u;
  profile.voltages = std::move(solution.values);
  profile.residual = solution.residual;
  profile.iterations = solution.iterations;
  profile.dense = solution.dense;
  profile.component = std::move(component);
  for (const auto& nb : g.neighbors(w)) profile.current += nb.multiplicity * (1.0 - profile.voltages[nb.vertex]);
  return profile;
}

// Effective resistance in ohms; +inf when w and u are disconnected.
inline double effective_resistance(const Graph& g, Vertex w, Vertex u, const SolverOptions& options = {}) {
  try {
    return 1.0 / solve_voltages(g, w, u, options).current;
  } catch (const InfiniteResistance&) {
    return kInfinity;
  }
}

// Current flowing from boundary vertex v into A along all edges joining them.
inline double vertex_current(const VoltageProfile& profile, const Graph& g, Vertex v, const VertexSet& a) {
  check_vertex(g, v);
  check_members(g, a);
  if (a.contains(v)) throw ParameterError("vertex " + std::to_string(v) + " is inside A, not on its boundary");
  double current = 0.0;
  bool adjacent = false;
  for (const auto& nb : g.neighbors(v)) {
    if (a.contains(nb.vertex)) {
      adjacent = true;
      current += nb.multiplicity * (profile.voltages[v] - profile.voltages[nb.vertex]);
    }
  }
  if (!adjacent) throw ParameterError("vertex " + std::to_string(v) + " is not on the boundary of A");
  return current;
}

struct LevelSet {
  std::size_t m = 0;
  VertexSet members;
  double theta = 0.0;  // largest voltage inside
};

// The nested family A_1 ⊂ A_2 ⊂ ... of connected low-voltage sets around the
// sink, stored as an admission order.
struct LevelSetSequence {
  std::vector<Vertex> order;
  std::vector<double> theta;  // theta[m-1] = max voltage over the first m
  std::size_t anomalies = 0;  // admissions above the lowest remaining voltage + tie slack

  std::size_t size() const { return order.size(); }

  LevelSet at(std::size_t m) const {
    if (m < 1 || m > order.size()) {
      throw ParameterError("level set size " + std::to_string(m) + " outside 1.." + std::to_string(order.size()));
    }
    return {m, VertexSet(std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m))),
            theta[m - 1]};
  }
};

// Voltages within this absolute slack are treated as tied.
inline constexpr double kTieSlack = 1e-12;

// Grows the set from the sink, always admitting a lowest-voltage vertex. Among
// tied candidates one adjacent to the current set is preferred (smallest
// (voltage, id) first), so every prefix is connected. If no tied candidate is
// adjacent, the smallest adjacent vertex is admitted anyway and counted as an
// anomaly; for exact voltages the maximum principle rules this out.
inline LevelSetSequence level_sets(const VoltageProfile& profile, const Graph& g) {
  const auto& volt = profile.voltages;
  auto key_less = [&](Vertex a, Vertex b) { return std::tie(volt[a], a) < std::tie(volt[b], b); };

  std::vector<Vertex> sorted = profile.component;
  std::sort(sorted.begin(), sorted.end(), key_less);
  std::vector<char> admitted(g.vertex_count(), 0);
  auto heap_cmp = [&](Vertex a, Vertex b) { return key_less(b, a); };
  std::priority_queue<Vertex, std::vector<Vertex>, decltype(heap_cmp)> frontier(heap_cmp);
  std::vector<char> queued(g.vertex_count(), 0);

  LevelSetSequence seq;
  seq.order.reserve(sorted.size());
  double theta = -kInfinity;
  std::size_t cursor = 0;

  auto admit = [&](Vertex x) {
    admitted[x] = 1;
    seq.order.push_back(x);
    theta = std::max(theta, volt[x]);
    seq.theta.push_back(theta);
    for (const auto& nb : g.neighbors(x)) {
      if (!admitted[nb.vertex] && !queued[nb.vertex]) {
        queued[nb.vertex] = 1;
        frontier.push(nb.vertex);
      }
    }
  };

  admit(profile.sink);
  while (seq.order.size() < sorted.size()) {
    while (admitted[sorted[cursor]]) ++cursor;
    const double lowest = volt[sorted[cursor]];
    while (!frontier.empty() && admitted[frontier.top()]) frontier.pop();
    const Vertex x = frontier.top();
    frontier.pop();
    if (volt[x] > lowest + kTieSlack) ++seq.anomalies;
    admit(x);
  }
  return seq;
}

inline LevelSet level_set(const VoltageProfile& profile, const Graph& g, std::size_t m) {
  if (m < 1 || m > profile.component.size()) {
    throw ParameterError("level set size " + std::to_string(m) + " outside 1.." +
                         std::to_string(profile.component.size()));
  }
  return level_sets(profile, g).at(m);
}

struct MaximumPrincipleCheck {
  bool holds = true;
  std::optional<Vertex> witness;
};

// Every non-battery vertex of the component must lie within the range of its
// neighbors' voltages, up to `slack`.
inline MaximumPrincipleCheck check_maximum_principle(const VoltageProfile& profile, const Graph& g,
                                                     double slack = 1e-9) {
  for (Vertex v : profile.component) {
    if (v == profile.source || v == profile.sink || g.degree(v) == 0) continue;
    double lo = kInfinity, hi = -kInfinity;
    for (const auto& nb : g.neighbors(v)) {
      lo = std::min(lo, profile.voltages[nb.vertex]);
      hi = std::max(hi, profile.voltages[nb.vertex]);
    }
    const double x = profile.voltages[v];
    if (x < lo - slack || x > hi + slack) return {false, v};
  }
  return {};
}

// Kirchhoff residual at the worst interior vertex, in amperes.
inline double max_kirchhoff_defect(const VoltageProfile& profile, const Graph& g) {
  double worst = 0.0;
  for (Vertex v : profile.component) {
    if (v == profile.source || v == profile.sink) continue;
    double s = 0.0;
    for (const auto& nb : g.neighbors(v)) s += nb.multiplicity * (profile.voltages[v] - profile.voltages[nb.vertex]);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace isores
