#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "isores/electrical.hpp"
#include "isores/error.hpp"
#include "isores/graph.hpp"
#include "isores/laplacian.hpp"
#include "isores/random.hpp"

namespace isores {

// Expected hitting times of `target` for the continuous-time walk that jumps
// along each edge at rate equal to its multiplicity. Vertices outside the
// target's component get +inf.
struct HittingTimes {
  Vertex target = 0;
  std::vector<double> values;
  double residual = 0.0;
};

// First-step equations: deg(v) h(v) - sum_x c(v,x) h(x) = 1 for v != target,
// h(target) = 0.
inline HittingTimes exact_hitting(const Graph& g, Vertex target, const SolverOptions& options = {}) {
  check_vertex(g, target);
  auto component = bfs_order(g, target);
  std::sort(component.begin(), component.end());
  const std::vector<double> ones(g.vertex_count(), 1.0);
  const std::pair<Vertex, double> pinned[] = {{target, 0.0}};
  auto solution = solve_dirichlet(g, component, pinned, ones, options);

  HittingTimes out;
  out.target = target;
  out.values.assign(g.vertex_count(), kInfinity);
  for (Vertex v : component) out.values[v] = solution.values[v];
  out.residual = solution.residual;
  return out;
}

// E_v T_u + E_u T_v; +inf across components.
inline double commute_time(const Graph& g, Vertex v, Vertex u, const SolverOptions& options = {}) {
  if (v == u) throw ParameterError("commute time needs two distinct vertices");
  const auto to_u = exact_hitting(g, u, options);
  if (std::isinf(to_u.values[v])) return kInfinity;
  const auto to_v = exact_hitting(g, v, options);
  return to_u.values[v] + to_v.values[u];
}

// Discrete-time simple random walk commute time 2 * (total multiplicity) * R.
// Standard theory, used only as an auxiliary cross-check.
inline double discrete_commute_time(const Graph& g, Vertex v, Vertex u, const SolverOptions& options = {}) {
  return 2.0 * static_cast<double>(g.total_multiplicity()) * effective_resistance(g, v, u, options);
}

struct TauStar {
  double value = 0.0;
  Vertex a = 0;
  Vertex b = 0;
  bool sampled = false;  // true: lower bound from a pair sample
  std::size_t pairs_evaluated = 0;
};

inline constexpr std::size_t kExactTauStarLimit = 300;

// Maximum commute time over vertex pairs of a connected graph. Exact (one
// hitting solve per target) up to kExactTauStarLimit vertices; above that the
// double-sweep far pair plus `pair_budget` seeded random pairs.
inline TauStar tau_star(const Graph& g, const SolverOptions& options = {}, std::size_t pair_budget = 32,
                        std::uint64_t seed = 0, std::size_t exact_limit = kExactTauStarLimit) {
  if (!is_connected(g)) throw ParameterError("tau* requires a connected graph");
  const std::size_t n = g.vertex_count();
  TauStar out;
  if (n < 2) return out;

  if (n <= exact_limit) {
    std::vector<std::vector<double>> hit(n);
    for (Vertex t = 0; t < n; ++t) hit[t] = exact_hitting(g, t, options).values;
    out.value = -1.0;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        const double c = hit[b][a] + hit[a][b];
        ++out.pairs_evaluated;
        if (c > out.value) {
          out.value = c;
          out.a = a;
          out.b = b;
        }
      }
    return out;
  }

  out.sampled = true;
  std::map<Vertex, std::vector<double>> cache;
  auto hitting = [&](Vertex t) -> const std::vector<double>& {
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, exact_hitting(g, t, options).values).first;
    return it->second;
  };
  std::vector<std::pair<Vertex, Vertex>> pairs;
  const auto far = double_sweep(g, 0);
  pairs.push_back({std::min(far.a, far.b), std::max(far.a, far.b)});
  Rng rng(derive_seed(seed, {0x7a75ULL, n}));
  while (pairs.size() < pair_budget + 1) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a != b) pairs.push_back({std::min(a, b), std::max(a, b)});
  }
  out.value = -1.0;
  for (auto [a, b] : pairs) {
    const double c = hitting(b)[a] + hitting(a)[b];
    ++out.pairs_evaluated;
    if (c > out.value) {
      out.value = c;
      out.a = a;
      out.b = b;
    }
  }
  return out;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Samples the hitting time of u from v with the jump chain: hold for an
// exponential time with rate = weighted degree, then move to a neighbor with
// probability proportional to multiplicity. Trial i draws from its own
// substream, and trials are reduced in index order.
inline MonteCarloEstimate simulate_hitting(const Graph& g, Vertex v, Vertex u, std::uint64_t seed,
                                           std::size_t trials) {
  check_vertex(g, v);
  check_vertex(g, u);
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (bfs_distances(g, v)[u] == kUnreachable) throw ParameterError("v and u lie in different components");

  std::vector<double> degree(g.vertex_count());
  for (Vertex x = 0; x < g.vertex_count(); ++x) degree[x] = g.weighted_degree(x);

  MonteCarloEstimate out;
  out.trials = trials;
  out.seed = seed;
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, {i}));
    Vertex x = v;
    double t = 0.0;
    while (x != u) {
      t += rng.exponential(degree[x]);
      double r = rng.uniform() * degree[x];
      const auto nbs = g.neighbors(x);
      Vertex next = nbs.back().vertex;
      for (const auto& nb : nbs) {
        if (r < nb.multiplicity) {
          next = nb.vertex;
          break;
        }
        r -= nb.multiplicity;
      }
      x = next;
    }
    const double delta = t - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (t - mean);
  }
  out.mean = mean;
  out.standard_error = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  return out;
}

}  // namespace isores
