#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "isores/electrical.hpp"
#include "isores/error.hpp"
#include "isores/graph.hpp"

namespace isores {

enum class Mode { exact, heuristic };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "heuristic"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "heuristic") return Mode::heuristic;
  throw ParameterError("mode must be 'exact' or 'heuristic', got '" + s + "'");
}

// Set sizes s with N/2^(n+1) < s <= N/2^n, in integer arithmetic. The
// modified variant lowers the upper end by one.
struct Band {
  std::size_t n = 0;
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  bool empty() const noexcept { return lo > hi; }
  bool contains(std::size_t s) const noexcept {
    return static_cast<std::int64_t>(s) >= lo && static_cast<std::int64_t>(s) <= hi;
  }
};

inline Band dyadic_band(std::size_t vertex_count, std::size_t n, bool modified = false) {
  Band b;
  b.n = n;
  b.lo = static_cast<std::int64_t>(vertex_count >> (n + 1)) + 1;
  b.hi = static_cast<std::int64_t>(vertex_count >> n) - (modified ? 1 : 0);
  return b;
}

// floor(log2 N): the number of bands in L_v.
inline std::size_t band_count(std::size_t vertex_count) {
  return vertex_count == 0 ? 0 : static_cast<std::size_t>(std::bit_width(vertex_count) - 1);
}

// |A|/|dA|^2 + 1/|dA|, +inf for an empty boundary.
inline double isoperimetric_term(std::size_t size, std::size_t boundary) {
  if (boundary == 0) return kInfinity;
  const double b = static_cast<double>(boundary);
  return static_cast<double>(size) / (b * b) + 1.0 / b;
}

struct ExactLimits {
  std::size_t gate = 18;
  bool override_gate = false;
};

struct HeuristicOptions {
  SolverOptions solver;
  std::size_t local_search_rounds = 4;
  std::size_t move_budget = 128;  // objective evaluations per round
  std::size_t move_width = 16;    // vertices considered per side of a swap
};

namespace detail {

using Mask = std::uint64_t;

struct MaskGraph {
  std::vector<Mask> adjacency;
  std::size_t size() const { return adjacency.size(); }
};

inline void check_gate(const Graph& g, const ExactLimits& limits, std::size_t hard_cap = 64) {
  if (g.vertex_count() > limits.gate && !limits.override_gate) {
    throw GateError("exact mode is limited to " + std::to_string(limits.gate) + " vertices (graph has " +
                    std::to_string(g.vertex_count()) + "); use heuristic mode");
  }
  if (g.vertex_count() > hard_cap) {
    throw GateError("exact mode cannot exceed " + std::to_string(hard_cap) + " vertices; use heuristic mode");
  }
}

inline MaskGraph mask_graph(const Graph& g) {
  MaskGraph mg;
  mg.adjacency.assign(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    mg.adjacency[e.u] |= Mask{1} << e.v;
    mg.adjacency[e.v] |= Mask{1} << e.u;
  }
  return mg;
}

inline VertexSet mask_to_set(Mask m) {
  std::vector<Vertex> out;
  while (m) {
    out.push_back(static_cast<Vertex>(std::countr_zero(m)));
    m &= m - 1;
  }
  return VertexSet(std::move(out));
}

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

// Enumerates each connected set containing `anchor` with size in [lo, hi]
// exactly once. A branch adds one neighbor w of the current set P and forbids
// every neighbor tried before w in the sibling order, so distinct branches
// produce disjoint families. Forbidden neighbors of P are necessarily on the
// boundary of every descendant, which is what `prune` may exploit.
//   visit(P, boundary_mask, size)
//   prune(P, boundary_mask, forbidden, size) -> true to skip the subtree
template <class Visit, class Prune>
class ConnectedSetSearch {
 public:
  ConnectedSetSearch(const MaskGraph& g, std::size_t lo, std::size_t hi, Visit& visit, Prune& prune)
      : g_(g), lo_(lo), hi_(hi), visit_(visit), prune_(prune) {}

  void run(Vertex anchor) {
    const Mask p = Mask{1} << anchor;
    if (hi_ < 1) return;
    if (!prune_(p, g_.adjacency[anchor], Mask{0}, std::size_t{1})) recurse(p, g_.adjacency[anchor], 0, 1);
  }

 private:
  void recurse(Mask p, Mask nbr, Mask forbidden, std::size_t size) {
    if (size >= lo_) visit_(p, nbr, size);
    if (size == hi_) return;
    Mask candidates = nbr & ~forbidden;
    Mask excluded = forbidden;
    while (candidates) {
      const Mask w = candidates & (~candidates + 1);
      candidates &= candidates - 1;
      const Mask child = p | w;
      const Mask child_nbr = (nbr | g_.adjacency[static_cast<std::size_t>(std::countr_zero(w))]) & ~child;
      if (!prune_(child, child_nbr, excluded, size + 1)) recurse(child, child_nbr, excluded, size + 1);
      excluded |= w;
    }
  }

  const MaskGraph& g_;
  std::size_t lo_, hi_;
  Visit& visit_;
  Prune& prune_;
};

template <class Visit, class Prune>
void search_connected_sets(const MaskGraph& g, Vertex anchor, std::size_t lo, std::size_t hi, Visit visit,
                           Prune prune) {
  ConnectedSetSearch<Visit, Prune>(g, lo, hi, visit, prune).run(anchor);
}

}  // namespace detail

// Calls fn(const VertexSet&) once for every connected vertex set containing v
// with lo <= |A| <= hi. Exact-mode gate applies.
template <class Fn>
void for_each_connected_set(const Graph& g, Vertex v, std::size_t lo, std::size_t hi, Fn&& fn,
                            const ExactLimits& limits = {}) {
  check_vertex(g, v);
  if (lo < 1 || hi > g.vertex_count() || lo > hi) {
    throw ParameterError("size range must satisfy 1 <= lo <= hi <= |G|");
  }
  detail::check_gate(g, limits);
  const auto mg = detail::mask_graph(g);
  detail::search_connected_sets(
      mg, v, lo, hi, [&](detail::Mask p, detail::Mask, std::size_t) { fn(detail::mask_to_set(p)); },
      [](detail::Mask, detail::Mask, detail::Mask, std::size_t) { return false; });
}

inline std::vector<VertexSet> enumerate_connected_sets(const Graph& g, Vertex v, std::size_t lo, std::size_t hi,
                                                       const ExactLimits& limits = {}) {
  std::vector<VertexSet> out;
  for_each_connected_set(g, v, lo, hi, [&](const VertexSet& s) { out.push_back(s); }, limits);
  return out;
}

// One summand of L_v: the best connected set containing the anchor within a
// dyadic band. `empty` marks a band with no admissible set (contributes 0).
struct BandTerm {
  Band band;
  VertexSet best_set;
  std::size_t boundary = 0;
  double term = 0.0;
  Mode mode = Mode::exact;
  bool empty = false;
};

struct IsoBound {
  Vertex anchor = 0;
  std::vector<BandTerm> terms;
  double total = 0.0;
  Mode mode = Mode::exact;
  bool modified = false;
};

// Minimum boundary over connected sets containing the anchor within a band.
struct BoundaryMinimum {
  Band band;
  std::optional<std::size_t> boundary;  // empty when no admissible set exists
  VertexSet witness;
  Mode mode = Mode::exact;
};

namespace detail {

inline BandTerm exact_band_term(const Graph& g, const MaskGraph& mg, Vertex v, const Band& band) {
  BandTerm out;
  out.band = band;
  out.mode = Mode::exact;
  if (band.empty()) {
    out.empty = true;
    return out;
  }
  const auto hi = static_cast<std::size_t>(band.hi);
  double best = -1.0;
  Mask best_mask = 0;
  std::size_t best_boundary = 0;
  search_connected_sets(
      mg, v, static_cast<std::size_t>(band.lo), hi,
      [&](Mask p, Mask nbr, std::size_t size) {
        const std::size_t b = popcount(nbr);
        const double t = isoperimetric_term(size, b);
        if (t > best) {
          best = t;
          best_mask = p;
          best_boundary = b;
        }
      },
      [&](Mask, Mask nbr, Mask forbidden, std::size_t) {
        if (best < 0.0) return false;
        return isoperimetric_term(hi, popcount(nbr & forbidden)) <= best;
      });
  (void)g;
  if (best < 0.0) {
    out.empty = true;
    return out;
  }
  out.best_set = mask_to_set(best_mask);
  out.boundary = best_boundary;
  out.term = best;
  return out;
}

inline BoundaryMinimum exact_boundary_minimum(const MaskGraph& mg, Vertex u, const Band& band) {
  BoundaryMinimum out;
  out.band = band;
  out.mode = Mode::exact;
  if (band.empty()) return out;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  Mask best_mask = 0;
  search_connected_sets(
      mg, u, static_cast<std::size_t>(band.lo), static_cast<std::size_t>(band.hi),
      [&](Mask p, Mask nbr, std::size_t) {
        const std::size_t b = popcount(nbr);
        if (b < best) {
          best = b;
          best_mask = p;
        }
      },
      [&](Mask, Mask nbr, Mask forbidden, std::size_t) { return popcount(nbr & forbidden) >= best; });
  if (best_mask != 0) {
    out.boundary = best;
    out.witness = mask_to_set(best_mask);
  }
  return out;
}

// Length of the longest prefix of `order` in which every vertex touches an
// earlier one (so every shorter prefix is connected).
inline std::size_t connected_prefix_length(const Graph& g, const std::vector<Vertex>& order) {
  if (order.empty()) return 0;
  std::vector<char> in(g.vertex_count(), 0);
  in[order[0]] = 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    bool touches = false;
    for (const auto& nb : g.neighbors(order[i])) touches = touches || in[nb.vertex];
    if (!touches) return i;
    in[order[i]] = 1;
  }
  return order.size();
}

// boundary[k] = |d(first k vertices of order)|.
inline std::vector<std::size_t> prefix_boundaries(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<char> state(g.vertex_count(), 0);  // 0 outside, 1 boundary, 2 inside
  std::vector<std::size_t> out{0};
  std::size_t b = 0;
  for (Vertex x : order) {
    if (state[x] == 1) --b;
    state[x] = 2;
    for (const auto& nb : g.neighbors(x)) {
      if (state[nb.vertex] == 0) {
        state[nb.vertex] = 1;
        ++b;
      }
    }
    out.push_back(b);
  }
  return out;
}

// Candidate growth orders around v for the heuristic: the voltage level sets
// of a battery between v and a far vertex, and the breadth-first order.
inline std::vector<std::vector<Vertex>> candidate_orders(const Graph& g, Vertex v, const HeuristicOptions& opt) {
  std::vector<std::vector<Vertex>> orders;
  auto bfs = bfs_order(g, v);
  if (bfs.size() > 1) {
    const auto dist = bfs_distances(g, v);
    Vertex far = v;
    for (Vertex x : bfs)
      if (dist[x] > dist[far] || (dist[x] == dist[far] && x < far)) far = x;
    auto profile = solve_voltages(g, far, v, opt.solver);
    auto seq = level_sets(profile, g);
    seq.order.resize(connected_prefix_length(g, seq.order));
    orders.push_back(std::move(seq.order));
  }
  orders.push_back(std::move(bfs));
  return orders;
}

// First-improvement local search over add / remove / swap moves that keep the
// set connected, containing the anchor and inside [lo, hi]. `score` is
// maximized. Returns the improved set and its boundary size.
template <class Score>
std::pair<std::vector<Vertex>, std::size_t> local_search(const Graph& g, Vertex anchor, std::vector<Vertex> set,
                                                         std::size_t lo, std::size_t hi, Score score,
                                                         const HeuristicOptions& opt) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex x : set) in[x] = 1;

  auto boundary_of = [&](const std::vector<Vertex>& members) {
    std::vector<Vertex> out;
    for (Vertex x : members)
      for (const auto& nb : g.neighbors(x))
        if (!in[nb.vertex]) out.push_back(nb.vertex);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto connected = [&](const std::vector<Vertex>& members) {
    if (members.empty()) return false;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack{members[0]};
    seen[members[0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(x))
        if (in[nb.vertex] && !seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          ++reached;
          stack.push_back(nb.vertex);
        }
    }
    return reached == members.size();
  };

  std::vector<Vertex> boundary = boundary_of(set);
  double current = score(set.size(), boundary.size());

  for (std::size_t round = 0; round < opt.local_search_rounds; ++round) {
    std::size_t budget = opt.move_budget;
    bool improved = false;
    const std::size_t width = opt.move_width;
    std::vector<Vertex> removable;
    for (auto it = set.rbegin(); it != set.rend() && removable.size() < width; ++it)
      if (*it != anchor) removable.push_back(*it);
    std::vector<Vertex> addable(boundary.begin(), boundary.begin() + static_cast<std::ptrdiff_t>(std::min(width, boundary.size())));

    // Each move: (vertex to remove or none, vertex to add or none).
    constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
    std::vector<std::pair<Vertex, Vertex>> moves;
    if (set.size() < hi)
      for (Vertex y : addable) moves.push_back({kNone, y});
    if (set.size() > lo)
      for (Vertex x : removable) moves.push_back({x, kNone});
    for (Vertex x : removable)
      for (Vertex y : addable) moves.push_back({x, y});

    for (auto [x, y] : moves) {
      if (budget == 0) break;
      --budget;
      std::vector<Vertex> trial;
      trial.reserve(set.size() + 1);
      for (Vertex z : set)
        if (z != x) trial.push_back(z);
      if (y != kNone) trial.push_back(y);
      if (x != kNone) in[x] = 0;
      if (y != kNone) in[y] = 1;
      bool accept = false;
      std::vector<Vertex> trial_boundary;
      if (connected(trial)) {
        trial_boundary = boundary_of(trial);
        accept = score(trial.size(), trial_boundary.size()) > current;
      }
      if (accept) {
        set = std::move(trial);
        boundary = std::move(trial_boundary);
        current = score(set.size(), boundary.size());
        improved = true;
        break;
      }
      if (x != kNone) in[x] = 1;
      if (y != kNone) in[y] = 0;
    }
    if (!improved) break;
  }
  return {set, boundary.size()};
}

struct HeuristicCandidate {
  std::vector<Vertex> set;
  std::size_t boundary = 0;
  double score = -kInfinity;
};

template <class Score>
HeuristicCandidate best_prefix(const std::vector<std::vector<Vertex>>& orders,
                               const std::vector<std::vector<std::size_t>>& boundaries, const Band& band,
                               Score score) {
  HeuristicCandidate best;
  if (band.empty()) return best;
  for (std::size_t o = 0; o < orders.size(); ++o) {
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(band.hi), orders[o].size());
    for (auto k = static_cast<std::size_t>(band.lo); k <= top; ++k) {
      const double s = score(k, boundaries[o][k]);
      if (s > best.score) {
        best.score = s;
        best.boundary = boundaries[o][k];
        best.set.assign(orders[o].begin(), orders[o].begin() + static_cast<std::ptrdiff_t>(k));
      }
    }
  }
  return best;
}

struct HeuristicContext {
  std::vector<std::vector<Vertex>> orders;
  std::vector<std::vector<std::size_t>> boundaries;

  HeuristicContext(const Graph& g, Vertex v, const HeuristicOptions& opt) : orders(candidate_orders(g, v, opt)) {
    for (const auto& o : orders) boundaries.push_back(prefix_boundaries(g, o));
  }
};

inline BandTerm heuristic_band_term(const Graph& g, const HeuristicContext& ctx, Vertex v, const Band& band,
                                    const HeuristicOptions& opt) {
  BandTerm out;
  out.band = band;
  out.mode = Mode::heuristic;
  auto score = [](std::size_t size, std::size_t b) { return isoperimetric_term(size, b); };
  auto best = best_prefix(ctx.orders, ctx.boundaries, band, score);
  if (best.set.empty()) {
    out.empty = true;
    return out;
  }
  if (best.boundary > 0) {
    auto [set, b] = local_search(g, v, std::move(best.set), static_cast<std::size_t>(band.lo),
                                 static_cast<std::size_t>(band.hi), score, opt);
    best.set = std::move(set);
    best.boundary = b;
  }
  out.best_set = VertexSet(std::move(best.set));
  out.boundary = best.boundary;
  out.term = isoperimetric_term(out.best_set.size(), out.boundary);
  return out;
}

inline BoundaryMinimum heuristic_boundary_minimum(const Graph& g, const HeuristicContext& ctx, Vertex u,
                                                  const Band& band, const HeuristicOptions& opt) {
  BoundaryMinimum out;
  out.band = band;
  out.mode = Mode::heuristic;
  auto score = [](std::size_t, std::size_t b) { return -static_cast<double>(b); };
  auto best = best_prefix(ctx.orders, ctx.boundaries, band, score);
  if (best.set.empty()) return out;
  if (best.boundary > 0) {
    auto [set, b] = local_search(g, u, std::move(best.set), static_cast<std::size_t>(band.lo),
                                 static_cast<std::size_t>(band.hi), score, opt);
    best.set = std::move(set);
    best.boundary = b;
  }
  out.boundary = best.boundary;
  out.witness = VertexSet(std::move(best.set));
  return out;
}

inline void check_band_index(const Graph& g, std::size_t n) {
  if (n < 1 || n > band_count(g.vertex_count())) {
    throw ParameterError("band index " + std::to_string(n) + " outside 1.." +
                         std::to_string(band_count(g.vertex_count())));
  }
}

inline double extended_sum(const std::vector<BandTerm>& terms) {
  double total = 0.0;
  for (const auto& t : terms) total += t.empty ? 0.0 : t.term;
  return total;
}

}  // namespace detail

// Exact mode maximizes over every admissible set (branch and bound); heuristic
// mode returns a lower bound on that maximum.
inline BandTerm band_term(const Graph& g, Vertex v, std::size_t n, Mode mode, const ExactLimits& limits = {},
                          const HeuristicOptions& heuristic = {}) {
  check_vertex(g, v);
  detail::check_band_index(g, n);
  const Band band = dyadic_band(g.vertex_count(), n);
  if (mode == Mode::exact) {
    detail::check_gate(g, limits);
    return detail::exact_band_term(g, detail::mask_graph(g), v, band);
  }
  return detail::heuristic_band_term(g, detail::HeuristicContext(g, v, heuristic), v, band, heuristic);
}

// The isoperimetric functional L_v: per-band maxima of |A|/|dA|^2 + 1/|dA|
// over connected A containing v, summed over n = 1..floor(log2 |G|).
inline IsoBound isoperimetric_sum(const Graph& g, Vertex v, Mode mode, const ExactLimits& limits = {},
                                  const HeuristicOptions& heuristic = {}) {
  check_vertex(g, v);
  IsoBound out;
  out.anchor = v;
  out.mode = mode;
  const std::size_t bands = band_count(g.vertex_count());
  if (mode == Mode::exact) {
    detail::check_gate(g, limits);
    const auto mg = detail::mask_graph(g);
    for (std::size_t n = 1; n <= bands; ++n)
      out.terms.push_back(detail::exact_band_term(g, mg, v, dyadic_band(g.vertex_count(), n)));
  } else if (bands > 0) {
    const detail::HeuristicContext ctx(g, v, heuristic);
    for (std::size_t n = 1; n <= bands; ++n)
      out.terms.push_back(detail::heuristic_band_term(g, ctx, v, dyadic_band(g.vertex_count(), n), heuristic));
  }
  out.total = detail::extended_sum(out.terms);
  return out;
}

// L_v with every band's upper end lowered by one. Exact only; empty bands
// contribute 0 and are flagged.
inline IsoBound isoperimetric_sum_modified(const Graph& g, Vertex v, const ExactLimits& limits = {}) {
  check_vertex(g, v);
  detail::check_gate(g, limits);
  IsoBound out;
  out.anchor = v;
  out.mode = Mode::exact;
  out.modified = true;
  const auto mg = detail::mask_graph(g);
  for (std::size_t n = 1; n <= band_count(g.vertex_count()); ++n)
    out.terms.push_back(detail::exact_band_term(g, mg, v, dyadic_band(g.vertex_count(), n, true)));
  out.total = detail::extended_sum(out.terms);
  return out;
}

// r_n: fewest boundary vertices of a connected set containing u in band n.
// Heuristic mode returns an upper bound on the minimum.
inline BoundaryMinimum min_band_boundary(const Graph& g, Vertex u, std::size_t n, Mode mode,
                                         const ExactLimits& limits = {}, const HeuristicOptions& heuristic = {}) {
  check_vertex(g, u);
  detail::check_band_index(g, n);
  const Band band = dyadic_band(g.vertex_count(), n);
  if (mode == Mode::exact) {
    detail::check_gate(g, limits);
    return detail::exact_boundary_minimum(detail::mask_graph(g), u, band);
  }
  return detail::heuristic_boundary_minimum(g, detail::HeuristicContext(g, u, heuristic), u, band, heuristic);
}

struct ExpansionResult {
  double value = kInfinity;
  VertexSet witness;
  Mode mode = Mode::exact;
};

// Minimum of objective(|S|, |dS|) over all nonempty S with |S| <= |G|/2,
// connected or not. Exact mode walks all subsets (gate applies, hard cap 24).
inline ExpansionResult min_vertex_expansion(const Graph& g,
                                            const std::function<double(std::size_t, std::size_t)>& objective,
                                            Mode mode, const ExactLimits& limits = {}) {
  const std::size_t n = g.vertex_count();
  if (!is_connected(g)) throw ParameterError("expansion profile requires a connected graph");
  ExpansionResult out;
  out.mode = mode;
  if (n < 2) return out;
  const std::size_t max_size = n / 2;
  if (mode == Mode::exact) {
    detail::check_gate(g, limits, 24);
    const auto mg = detail::mask_graph(g);
    std::vector<std::uint32_t> nbr(std::size_t{1} << n, 0);
    detail::Mask best_mask = 0;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
      nbr[s] = nbr[s & (s - 1)] | static_cast<std::uint32_t>(mg.adjacency[static_cast<std::size_t>(std::countr_zero(s))]);
      const auto size = static_cast<std::size_t>(std::popcount(s));
      if (size > max_size) continue;
      const double value = objective(size, static_cast<std::size_t>(std::popcount(nbr[s] & ~s)));
      if (value < out.value) {
        out.value = value;
        best_mask = s;
      }
    }
    out.witness = detail::mask_to_set(best_mask);
    return out;
  }
  // Heuristic: breadth-first prefixes from every vertex give an upper bound.
  for (Vertex v = 0; v < n; ++v) {
    const auto order = bfs_order(g, v);
    const auto boundaries = detail::prefix_boundaries(g, order);
    for (std::size_t k = 1; k <= max_size; ++k) {
      const double value = objective(k, boundaries[k]);
      if (value < out.value) {
        out.value = value;
        out.witness = VertexSet(std::vector<Vertex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)));
      }
    }
  }
  return out;
}

// Vertex Cheeger constant: min |dS| / |S| over 1 <= |S| <= |G|/2.
inline ExpansionResult cheeger(const Graph& g, Mode mode, const ExactLimits& limits = {}) {
  return min_vertex_expansion(
      g, [](std::size_t s, std::size_t b) { return static_cast<double>(b) / static_cast<double>(s); }, mode, limits);
}

struct BallLayer {
  std::size_t radius = 0;
  std::size_t size = 0;      // |B(v, r)|
  std::size_t boundary = 0;  // |dB(v, r)| = vertices at distance r + 1
};

inline std::vector<BallLayer> ball_profile(const Graph& g, Vertex v) {
  const auto dist = bfs_distances(g, v);
  std::vector<std::size_t> count;
  for (auto d : dist) {
    if (d == kUnreachable) continue;
    if (d >= count.size()) count.resize(d + 1, 0);
    ++count[d];
  }
  std::vector<BallLayer> out;
  std::size_t cumulative = 0;
  for (std::size_t r = 0; r < count.size(); ++r) {
    cumulative += count[r];
    out.push_back({r, cumulative, r + 1 < count.size() ? count[r + 1] : 0});
  }
  return out;
}

}  // namespace isores
