#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "isores/electrical.hpp"
#include "isores/generators.hpp"
#include "isores/graph.hpp"
#include "isores/isoperimetry.hpp"
#include "isores/laplacian.hpp"
#include "isores/random.hpp"
#include "isores/report.hpp"
#include "isores/walks.hpp"

namespace isores {

using VertexPair = std::pair<Vertex, Vertex>;

// -- shared helpers ------------------------------------------------------------

// Least-squares line through (log x, log y).
struct PowerFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

inline PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("power-law fit needs at least two points");
  const auto k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0) || std::isinf(y[i])) throw ParameterError("power-law fit needs positive finite data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double vx = sxx - sx * sx / k, vy = syy - sy * sy / k, cxy = sxy - sx * sy / k;
  if (vx <= 0) throw ParameterError("power-law fit needs at least two distinct x values");
  PowerFit f;
  f.exponent = cxy / vx;
  f.prefactor = std::exp((sy - f.exponent * sx) / k);
  f.r_squared = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
  f.points = x.size();
  return f;
}

inline Json to_json(const PowerFit& f) {
  return {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"r_squared", f.r_squared}, {"points", f.points}};
}

inline std::vector<VertexPair> all_pairs(std::size_t n) {
  std::vector<VertexPair> out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) out.push_back({a, b});
  return out;
}

// The double-sweep far pair first, then up to `budget` distinct random pairs.
inline std::vector<VertexPair> sample_pairs(const Graph& g, std::size_t budget, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexPair> out;
  if (n < 2) return out;
  std::set<VertexPair> seen;
  const auto far = double_sweep(g, 0);
  if (far.a != far.b) {
    out.push_back({std::min(far.a, far.b), std::max(far.a, far.b)});
    seen.insert(out.back());
  }
  const std::size_t available = n * (n - 1) / 2;
  Rng rng(seed);
  for (std::size_t attempts = 0; out.size() < budget + 1 && seen.size() < available && attempts < 64 * (budget + 1);
       ++attempts) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a == b) continue;
    const VertexPair p{std::min(a, b), std::max(a, b)};
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

inline std::uint64_t hash_name(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

inline double log2_size(std::size_t n) { return std::log2(static_cast<double>(n)); }

// -- Theorem check ---------------------------------------------------------------

struct PairRatio {
  Vertex w = 0;
  Vertex u = 0;
  double resistance = 0.0;
  double lw = 0.0;
  double lu = 0.0;
  double ratio = 0.0;  // R / (L_w + L_u), extended real
  bool both_infinite = false;
};

struct TheoremCheck {
  std::size_t vertex_count = 0;
  Mode mode = Mode::exact;
  std::vector<PairRatio> pairs;
  double sup_ratio = 0.0;  // over finite ratios
  std::size_t both_infinite = 0;
  std::size_t infinite_ratios = 0;
};

// R / (L_w + L_u) with inf/inf read as 0 and flagged.
inline PairRatio theorem_ratio(Vertex w, Vertex u, double r, double lw, double lu) {
  PairRatio p{w, u, r, lw, lu, 0.0, false};
  const double l = lw + lu;
  if (std::isinf(r) && std::isinf(l)) {
    p.both_infinite = true;
  } else if (std::isinf(l)) {
    p.ratio = 0.0;
  } else if (std::isinf(r) || l == 0.0) {
    p.ratio = kInfinity;
  } else {
    p.ratio = r / l;
  }
  return p;
}

inline TheoremCheck verify_theorem(const Graph& g, const std::vector<VertexPair>& pairs, Mode mode,
                                   const ExactLimits& limits = {}, const HeuristicOptions& heuristic = {},
                                   const SolverOptions& solver = {}) {
  TheoremCheck out;
  out.vertex_count = g.vertex_count();
  out.mode = mode;
  std::map<Vertex, double> l_cache;
  auto l_of = [&](Vertex v) {
    auto it = l_cache.find(v);
    if (it == l_cache.end()) it = l_cache.emplace(v, isoperimetric_sum(g, v, mode, limits, heuristic).total).first;
    return it->second;
  };
  for (auto [w, u] : pairs) {
    check_vertex(g, w);
    check_vertex(g, u);
    if (w == u) throw ParameterError("pair endpoints must differ");
    const auto p = theorem_ratio(w, u, effective_resistance(g, w, u, solver), l_of(w), l_of(u));
    out.both_infinite += p.both_infinite;
    if (std::isinf(p.ratio)) {
      ++out.infinite_ratios;
    } else {
      out.sup_ratio = std::max(out.sup_ratio, p.ratio);
    }
    out.pairs.push_back(p);
  }
  return out;
}

inline Json to_json(const PairRatio& p) {
  Json j = {{"w", p.w}, {"u", p.u}, {"resistance", ext(p.resistance)}, {"l_w", ext(p.lw)},
            {"l_u", ext(p.lu)}, {"ratio", ext(p.ratio)}};
  if (p.both_infinite) j["flag"] = "both infinite";
  return j;
}

inline Report to_report(const TheoremCheck& c, const std::string& source) {
  Report r;
  r.command = "verify-theorem";
  r.config = {{"graph", source}, {"vertices", c.vertex_count}, {"mode", to_string(c.mode)}, {"pairs", c.pairs.size()}};
  r.summary = {{"sup_finite_ratio", c.sup_ratio},
               {"infinite_ratios", c.infinite_ratios},
               {"both_infinite", c.both_infinite}};
  for (const auto& p : c.pairs) r.rows.push_back(to_json(p));
  return r;
}

// -- Constant sweep --------------------------------------------------------------

struct CorpusGraph {
  std::string family;
  std::string spec;
  Graph graph;
};

// Connected graphs of every family with 2..max_size vertices.
inline std::vector<CorpusGraph> exact_corpus(std::uint64_t seed = 0, std::size_t max_size = 18) {
  std::vector<CorpusGraph> out;
  auto add = [&](const std::string& family, const std::string& spec) {
    Graph g = generate(spec);
    if (g.vertex_count() >= 2 && g.vertex_count() <= max_size) out.push_back({family, spec, std::move(g)});
  };
  for (std::size_t n = 2; n <= max_size; ++n) add("path", "path:" + std::to_string(n));
  for (std::size_t n = 3; n <= max_size; ++n) add("cycle", "cycle:" + std::to_string(n));
  for (std::size_t n = 2; n <= max_size; ++n) add("complete", "complete:" + std::to_string(n));
  for (std::size_t n = 3; n <= max_size; ++n) add("star", "star:" + std::to_string(n));
  for (std::size_t n = 2; n * n <= max_size; ++n) add("grid2d", "grid2d:" + std::to_string(n));
  for (std::size_t d = 1; (std::size_t{1} << d) <= max_size; ++d) add("hypercube", "hypercube:" + std::to_string(d));
  for (std::size_t n = 5; n <= max_size; ++n) add("circulant", "circulant:" + std::to_string(n) + ",1,2");
  for (std::size_t n = 1; n <= 2; ++n) add("layered", "layered:" + std::to_string(n));
  for (std::size_t n = 2; n <= max_size; ++n) {
    const auto graph_seed = derive_seed(seed, {hash_name("random"), n}) & 0x7fffffffULL;
    add("random", "random:" + std::to_string(n) + "," + std::to_string(n / 2) + "," + std::to_string(graph_seed));
  }
  return out;
}

struct SweepConfig {
  std::uint64_t seed = 0;
  std::size_t max_size = 18;
  std::size_t all_pairs_limit = 10;
  std::size_t pair_budget = 32;
  Mode mode = Mode::exact;
  SolverOptions solver;
};

struct SweepEntry {
  std::string family;
  std::string spec;
  std::size_t vertex_count = 0;
  std::size_t pairs = 0;
  bool sampled = false;
  double c_hat = 0.0;
  PairRatio worst;
  std::size_t infinite_ratios = 0;
};

struct DoublingCheck {
  std::string family;
  std::size_t small = 0;
  std::size_t large = 0;
  double growth = 0.0;  // C(large) / C(small)
  bool ok = true;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  std::vector<std::pair<std::string, double>> family_c_hat;
  double overall = 0.0;
  std::vector<DoublingCheck> doublings;
  std::size_t infinite_ratios = 0;
  std::size_t doubling_violations = 0;
};

inline SweepResult constant_sweep(const SweepConfig& cfg) {
  SweepResult out;
  for (const auto& cg : exact_corpus(cfg.seed, cfg.max_size)) {
    const auto& g = cg.graph;
    SweepEntry e;
    e.family = cg.family;
    e.spec = cg.spec;
    e.vertex_count = g.vertex_count();
    e.sampled = g.vertex_count() > cfg.all_pairs_limit;
    const auto pairs = e.sampled
                           ? sample_pairs(g, cfg.pair_budget, derive_seed(cfg.seed, {hash_name(cg.spec)}))
                           : all_pairs(g.vertex_count());
    const auto check = verify_theorem(g, pairs, cfg.mode, {}, {}, cfg.solver);
    e.pairs = pairs.size();
    e.infinite_ratios = check.infinite_ratios + check.both_infinite;
    for (const auto& p : check.pairs)
      if (!std::isinf(p.ratio) && !p.both_infinite && p.ratio >= e.c_hat) {
        if (p.ratio > e.c_hat || e.worst.w == e.worst.u) e.worst = p;
        e.c_hat = p.ratio;
      }
    out.infinite_ratios += e.infinite_ratios;
    out.entries.push_back(std::move(e));
  }

  std::map<std::string, std::map<std::size_t, double>> by_family;
  for (const auto& e : out.entries) {
    auto& slot = by_family[e.family][e.vertex_count];
    slot = std::max(slot, e.c_hat);
  }
  for (const auto& e : out.entries) {
    if (std::none_of(out.family_c_hat.begin(), out.family_c_hat.end(),
                     [&](const auto& fc) { return fc.first == e.family; })) {
      double c = 0.0;
      for (const auto& [size, v] : by_family[e.family]) c = std::max(c, v);
      out.family_c_hat.push_back({e.family, c});
      out.overall = std::max(out.overall, c);
      for (const auto& [size, v] : by_family[e.family]) {
        auto it = by_family[e.family].find(2 * size);
        if (it == by_family[e.family].end()) continue;
        DoublingCheck d{e.family, size, 2 * size, v > 0 ? it->second / v : kInfinity, true};
        d.ok = d.growth <= 2.0;
        out.doubling_violations += !d.ok;
        out.doublings.push_back(d);
      }
    }
  }
  return out;
}

inline Report to_report(const SweepResult& s, const SweepConfig& cfg) {
  Report r;
  r.command = "constant-sweep";
  r.config = {{"seed", cfg.seed},
              {"max_size", cfg.max_size},
              {"all_pairs_limit", cfg.all_pairs_limit},
              {"pair_budget", cfg.pair_budget},
              {"mode", to_string(cfg.mode)},
              {"tolerance", cfg.solver.tolerance}};
  Json fam = Json::object();
  for (const auto& [f, c] : s.family_c_hat) fam[f] = c;
  Json dbl = Json::array();
  for (const auto& d : s.doublings)
    dbl.push_back({{"family", d.family}, {"small", d.small}, {"large", d.large}, {"growth", ext(d.growth)}, {"ok", d.ok}});
  r.summary = {{"overall_c_hat", s.overall},
               {"family_c_hat", fam},
               {"infinite_ratios", s.infinite_ratios},
               {"doubling_violations", s.doubling_violations},
               {"doublings", dbl}};
  for (const auto& e : s.entries)
    r.rows.push_back({{"family", e.family},
                      {"graph", e.spec},
                      {"vertices", e.vertex_count},
                      {"pairs", e.pairs},
                      {"sampled", e.sampled},
                      {"c_hat", e.c_hat},
                      {"worst", to_json(e.worst)},
                      {"infinite_ratios", e.infinite_ratios}});
  return r;
}

// -- Modified-band falsification -------------------------------------------------

struct FalsifyRow {
  std::size_t m = 0;
  double resistance = 0.0;
  IsoBound modified_w, modified_u;
  IsoBound unmodified_w, unmodified_u;
  double modified_total = 0.0;
  double unmodified_total = 0.0;
  double modified_ratio = 0.0;  // R / modified total
};

struct FalsifyResult {
  std::vector<FalsifyRow> rows;
  bool demonstrated = true;  // every m: R = inf, modified finite, unmodified inf
};

// Two equal cliques: R is infinite, the true L is infinite, but lowering each
// band's upper end by one excludes the only empty-boundary set.
inline FalsifyResult falsify_modified_band(const std::vector<std::size_t>& ms = {4, 8, 16}) {
  FalsifyResult out;
  ExactLimits limits;
  limits.override_gate = true;
  for (std::size_t m : ms) {
    if (m < 2 || 2 * m > 64) throw ParameterError("clique size must lie in 2..32");
    const Graph g = disjoint_union(complete_graph(m), complete_graph(m));
    FalsifyRow row;
    row.m = m;
    const Vertex w = 0, u = static_cast<Vertex>(m);
    row.resistance = effective_resistance(g, w, u);
    row.modified_w = isoperimetric_sum_modified(g, w, limits);
    row.modified_u = isoperimetric_sum_modified(g, u, limits);
    row.unmodified_w = isoperimetric_sum(g, w, Mode::exact, limits);
    row.unmodified_u = isoperimetric_sum(g, u, Mode::exact, limits);
    row.modified_total = row.modified_w.total + row.modified_u.total;
    row.unmodified_total = row.unmodified_w.total + row.unmodified_u.total;
    row.modified_ratio = theorem_ratio(w, u, row.resistance, row.modified_w.total, row.modified_u.total).ratio;
    out.demonstrated = out.demonstrated && std::isinf(row.resistance) && std::isfinite(row.modified_total) &&
                       std::isinf(row.unmodified_total);
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline Report to_report(const FalsifyResult& f) {
  Report r;
  r.command = "falsify-band";
  Json ms = Json::array();
  for (const auto& row : f.rows) ms.push_back(row.m);
  r.config = {{"m", ms}};
  r.summary = {{"demonstrated", f.demonstrated}};
  for (const auto& row : f.rows)
    r.rows.push_back({{"m", row.m},
                      {"vertices", 2 * row.m},
                      {"resistance", ext(row.resistance)},
                      {"modified_l_w", ext(row.modified_w.total)},
                      {"modified_l_u", ext(row.modified_u.total)},
                      {"modified_total", ext(row.modified_total)},
                      {"unmodified_l_w", ext(row.unmodified_w.total)},
                      {"unmodified_l_u", ext(row.unmodified_u.total)},
                      {"ratio_with_modified", ext(row.modified_ratio)},
                      {"modified_bound_w", to_json(row.modified_w)},
                      {"unmodified_bound_w", to_json(row.unmodified_w)}});
  return r;
}

// -- Layered example -------------------------------------------------------------

struct LayeredRow {
  std::size_t n = 0;
  std::size_t vertex_count = 0;
  double resistance = 0.0;
  double n_times_r = 0.0;
  double sigma_heuristic = 0.0;  // sum over bands of |A|/|dA|^2, lower bound
  double l_heuristic = 0.0;
  std::optional<double> sigma_exact;
  std::optional<double> l_exact;
};

struct LayeredResult {
  std::vector<LayeredRow> rows;
  PowerFit resistance_fit;
  PowerFit sigma_fit;
  double n_times_r_spread = 0.0;  // max / min of n R
};

// Sum over bands of |A|/|dA|^2 at the band maximizers of a bound.
inline double squared_part(const IsoBound& b) {
  double s = 0.0;
  for (const auto& t : b.terms) {
    if (t.empty) continue;
    if (t.boundary == 0) return kInfinity;
    const double d = static_cast<double>(t.boundary);
    s += static_cast<double>(t.best_set.size()) / (d * d);
  }
  return s;
}

// Exact sum over bands of the maximum of |A|/|dA|^2 alone.
inline double exact_squared_sum(const Graph& g, Vertex v) {
  const auto mg = detail::mask_graph(g);
  double total = 0.0;
  for (std::size_t n = 1; n <= band_count(g.vertex_count()); ++n) {
    const Band band = dyadic_band(g.vertex_count(), n);
    double best = 0.0;
    detail::search_connected_sets(
        mg, v, static_cast<std::size_t>(band.lo), static_cast<std::size_t>(band.hi),
        [&](detail::Mask, detail::Mask nbr, std::size_t size) {
          const double b = static_cast<double>(detail::popcount(nbr));
          best = std::max(best, b == 0 ? kInfinity : static_cast<double>(size) / (b * b));
        },
        [](detail::Mask, detail::Mask, detail::Mask, std::size_t) { return false; });
    total += best;
  }
  return total;
}

inline LayeredResult layered_scaling(const std::vector<std::size_t>& n_list, const SolverOptions& solver = {}) {
  if (n_list.size() < 2) throw ParameterError("layered scaling needs at least two sizes");
  LayeredResult out;
  std::vector<double> xs, rs, sig;
  for (std::size_t n : n_list) {
    if (n < 1 || n > 40) throw ParameterError("layered sizes must lie in 1..40");
    const Graph g = layered_example_graph(n);
    const Vertex w = layered_layer(n, 0).first, u = layered_layer(n, 4).first;
    LayeredRow row;
    row.n = n;
    row.vertex_count = g.vertex_count();
    row.resistance = effective_resistance(g, w, u, solver);
    row.n_times_r = static_cast<double>(n) * row.resistance;
    HeuristicOptions h;
    h.solver = solver;
    const auto bound = isoperimetric_sum(g, w, Mode::heuristic, {}, h);
    row.sigma_heuristic = squared_part(bound);
    row.l_heuristic = bound.total;
    if (g.vertex_count() <= ExactLimits{}.gate) {
      row.sigma_exact = exact_squared_sum(g, w);
      row.l_exact = isoperimetric_sum(g, w, Mode::exact).total;
    }
    xs.push_back(static_cast<double>(n));
    rs.push_back(row.resistance);
    sig.push_back(row.sigma_heuristic);
    out.rows.push_back(row);
  }
  out.resistance_fit = fit_power_law(xs, rs);
  out.sigma_fit = fit_power_law(xs, sig);
  double lo = kInfinity, hi = 0.0;
  for (const auto& row : out.rows) {
    lo = std::min(lo, row.n_times_r);
    hi = std::max(hi, row.n_times_r);
  }
  out.n_times_r_spread = hi / lo;
  return out;
}

inline Report to_report(const LayeredResult& l) {
  Report r;
  r.command = "layered-scaling";
  Json ns = Json::array();
  for (const auto& row : l.rows) ns.push_back(row.n);
  r.config = {{"n", ns}};
  r.summary = {{"resistance_fit", to_json(l.resistance_fit)},
               {"sigma_fit", to_json(l.sigma_fit)},
               {"sigma_mode", "heuristic"},
               {"n_times_r_spread", l.n_times_r_spread}};
  for (const auto& row : l.rows) {
    Json j = {{"n", row.n},
              {"vertices", row.vertex_count},
              {"resistance", row.resistance},
              {"n_times_r", row.n_times_r},
              {"sigma_heuristic", ext(row.sigma_heuristic)},
              {"l_heuristic", ext(row.l_heuristic)}};
    j["sigma_exact"] = row.sigma_exact ? ext(*row.sigma_exact) : Json(nullptr);
    j["l_exact"] = row.l_exact ? ext(*row.l_exact) : Json(nullptr);
    r.rows.push_back(j);
  }
  return r;
}

// -- Multi-edge cycle --------------------------------------------------------------

struct TauRow {
  std::size_t n = 0;
  std::uint32_t multiplicity = 0;
  TauStar tau;
  double tau_over_n = 0.0;
  double identity_gap = 0.0;  // |tau - |G| R(a, b)| / tau, R from the electrical solver
  std::size_t arcs_checked = 0;
  double min_arc_slack = kInfinity;  // min over arcs of edge boundary - |A|^(2/3)
};

struct TauScaling {
  std::vector<TauRow> rows;
  PowerFit fit;
  bool tau_over_n_increasing = true;
  bool arcs_ok = true;
  double max_identity_gap = 0.0;
};

// Edge boundary (with multiplicity) of every arc {0..k-1}, k <= n/2, against
// |A|^(2/3).
inline std::pair<std::size_t, double> arc_condition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  double slack = kInfinity;
  std::size_t checked = 0;
  std::vector<char> in(n, 0);
  std::int64_t boundary = 0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const Vertex x = static_cast<Vertex>(k - 1);
    in[x] = 1;
    for (const auto& nb : g.neighbors(x)) boundary += in[nb.vertex] ? -std::int64_t(nb.multiplicity) : nb.multiplicity;
    slack = std::min(slack, static_cast<double>(boundary) - std::pow(static_cast<double>(k), 2.0 / 3.0));
    ++checked;
  }
  return {checked, slack};
}

inline TauScaling multi_edge_tau_scaling(const std::vector<std::size_t>& n_list, std::size_t pair_budget = 32,
                                         std::uint64_t seed = 0, const SolverOptions& solver = {}) {
  if (n_list.size() < 2) throw ParameterError("tau scaling needs at least two sizes");
  TauScaling out;
  std::vector<double> xs, ts;
  for (std::size_t n : n_list) {
    if (n < 8 || n > 1024 || n % 2) throw ParameterError("multi-edge cycle sizes must be even and in 8..1024");
    const Graph g = multi_edge_cycle_graph(n);
    TauRow row;
    row.n = n;
    row.multiplicity = g.edges()[0].multiplicity;
    row.tau = tau_star(g, solver, pair_budget, derive_seed(seed, {n}));
    row.tau_over_n = row.tau.value / static_cast<double>(n);
    const double via_r = static_cast<double>(n) * effective_resistance(g, row.tau.a, row.tau.b, solver);
    row.identity_gap = std::abs(row.tau.value - via_r) / row.tau.value;
    std::tie(row.arcs_checked, row.min_arc_slack) = arc_condition(g);
    out.arcs_ok = out.arcs_ok && row.min_arc_slack >= 0.0;
    out.max_identity_gap = std::max(out.max_identity_gap, row.identity_gap);
    if (!out.rows.empty() && !(row.tau_over_n > out.rows.back().tau_over_n)) out.tau_over_n_increasing = false;
    xs.push_back(static_cast<double>(n));
    ts.push_back(row.tau.value);
    out.rows.push_back(row);
  }
  out.fit = fit_power_law(xs, ts);
  return out;
}

inline Report to_report(const TauScaling& t, std::size_t pair_budget, std::uint64_t seed) {
  Report r;
  r.command = "multiedge-scaling";
  Json ns = Json::array();
  for (const auto& row : t.rows) ns.push_back(row.n);
  r.config = {{"n", ns}, {"pair_budget", pair_budget}, {"seed", seed}, {"gamma", 2.0 / 3.0}, {"delta", 1.0}};
  r.summary = {{"fit", to_json(t.fit)},
               {"tau_over_n_increasing", t.tau_over_n_increasing},
               {"arc_condition_holds", t.arcs_ok},
               {"max_identity_gap", t.max_identity_gap}};
  for (const auto& row : t.rows)
    r.rows.push_back({{"n", row.n},
                      {"multiplicity", row.multiplicity},
                      {"tau_star", row.tau.value},
                      {"tau_over_n", row.tau_over_n},
                      {"a", row.tau.a},
                      {"b", row.tau.b},
                      {"sampled", row.tau.sampled},
                      {"identity_gap", row.identity_gap},
                      {"arcs_checked", row.arcs_checked},
                      {"min_arc_slack", row.min_arc_slack}});
  return r;
}

// -- Percolation -------------------------------------------------------------------

struct PercConfig {
  std::size_t n = 32;
  double p = 0.7;
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::size_t pair_budget = 32;
};

inline void check_config(const PercConfig& c) {
  if (c.n < 2) throw ParameterError("percolation box side must be >= 2");
  if (!(c.p > 0.0 && c.p <= 1.0)) throw ParameterError("retention probability must lie in (0, 1]");
  if (c.trials < 1) throw ParameterError("trials must be >= 1");
}

inline std::uint64_t trial_seed(const PercConfig& c, std::size_t trial, std::uint64_t stream) {
  return derive_seed(c.seed, {c.n, std::bit_cast<std::uint64_t>(c.p), trial, stream});
}

// Bond percolation on the n x n box: grid edges in generator order, each kept
// with probability p.
inline Graph percolate(const PercConfig& c, std::size_t trial) {
  check_config(c);
  const Graph grid = grid2d_graph(c.n);
  Rng rng(trial_seed(c, trial, 0));
  std::vector<Edge> kept;
  for (const auto& e : grid.edges())
    if (rng.uniform() < c.p) kept.push_back(e);
  return Graph(grid.vertex_count(), std::move(kept));
}

// Largest connected component; ties go to the one with the smallest vertex.
inline VertexSet giant_component(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    const Vertex a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> size(n, 0);
  for (Vertex v = 0; v < n; ++v) ++size[find(v)];
  Vertex best = 0;
  for (Vertex v = 0; v < n; ++v)
    if (size[v] > size[best]) best = v;
  std::vector<Vertex> members;
  for (Vertex v = 0; v < n; ++v)
    if (find(v) == best) members.push_back(v);
  return VertexSet(std::move(members));
}

struct PercTrial {
  std::size_t trial = 0;
  std::size_t retained_edges = 0;
  std::size_t giant_size = 0;
  bool skipped = false;
  double r_hat = 0.0;
  double far_pair_resistance = 0.0;
  std::size_t pairs = 0;
};

struct PercSeries {
  PercConfig config;
  std::vector<PercTrial> trials;
  std::size_t skipped = 0;
  double max_r_hat = 0.0;
  double mean_r_hat = 0.0;
  double max_ratio = 0.0;  // max over trials of R_hat / log2 n
};

struct PercStudy {
  std::vector<PercSeries> series;
  double growth = 0.0;  // max_ratio at the largest n over that at the smallest
  double worst_ratio = 0.0;
  bool exploratory = false;  // p <= 1/2
};

inline PercSeries percolation_series(const PercConfig& c) {
  check_config(c);
  PercSeries s;
  s.config = c;
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const Graph g = percolate(c, t);
    PercTrial rec;
    rec.trial = t;
    rec.retained_edges = g.edge_count();
    const auto giant = giant_component(g);
    rec.giant_size = giant.size();
    if (giant.size() < 2) {
      rec.skipped = true;
      ++s.skipped;
      s.trials.push_back(rec);
      continue;
    }
    const auto sub = induced_subgraph(g, giant);
    const auto pairs = sample_pairs(sub.graph, c.pair_budget, trial_seed(c, t, 1));
    const GroundedLaplacian lap(sub.graph, pairs.front().first);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double r = lap.resistance(pairs[i].first, pairs[i].second);
      if (i == 0) rec.far_pair_resistance = r;
      rec.r_hat = std::max(rec.r_hat, r);
    }
    rec.pairs = pairs.size();
    s.max_r_hat = std::max(s.max_r_hat, rec.r_hat);
    s.max_ratio = std::max(s.max_ratio, rec.r_hat / log2_size(c.n));
    sum += rec.r_hat;
    ++counted;
    s.trials.push_back(rec);
  }
  s.mean_r_hat = counted ? sum / static_cast<double>(counted) : 0.0;
  return s;
}

inline PercStudy percolation_resistance(const std::vector<std::size_t>& n_list, const PercConfig& base) {
  if (n_list.empty()) throw ParameterError("percolation needs at least one box size");
  PercStudy out;
  out.exploratory = base.p <= 0.5;
  for (std::size_t n : n_list) {
    PercConfig c = base;
    c.n = n;
    out.series.push_back(percolation_series(c));
    out.worst_ratio = std::max(out.worst_ratio, out.series.back().max_ratio);
  }
  const double first = out.series.front().max_ratio;
  out.growth = first > 0 ? out.series.back().max_ratio / first : kInfinity;
  return out;
}

inline Json perc_config_json(const PercConfig& c) {
  return {{"n", c.n}, {"p", c.p}, {"seed", c.seed}, {"trials", c.trials}, {"pair_budget", c.pair_budget}};
}

inline Report to_report(const PercStudy& s) {
  Report r;
  r.command = "percolation";
  Json ns = Json::array();
  for (const auto& series : s.series) ns.push_back(series.config.n);
  const auto& c = s.series.front().config;
  r.config = {{"n", ns}, {"p", c.p}, {"seed", c.seed}, {"trials", c.trials}, {"pair_budget", c.pair_budget}};
  Json per_n = Json::array();
  for (const auto& series : s.series)
    per_n.push_back({{"n", series.config.n},
                     {"max_r_hat", series.max_r_hat},
                     {"mean_r_hat", series.mean_r_hat},
                     {"max_r_hat_over_log2n", series.max_ratio},
                     {"skipped", series.skipped}});
  r.summary = {{"per_n", per_n},
               {"growth_last_over_first", ext(s.growth)},
               {"worst_r_hat_over_log2n", s.worst_ratio},
               {"exploratory", s.exploratory}};
  for (const auto& series : s.series)
    for (const auto& t : series.trials)
      r.rows.push_back({{"n", series.config.n},
                        {"trial", t.trial},
                        {"retained_edges", t.retained_edges},
                        {"giant_size", t.giant_size},
                        {"skipped", t.skipped},
                        {"pairs", t.pairs},
                        {"r_hat", t.r_hat},
                        {"far_pair_resistance", t.far_pair_resistance},
                        {"r_hat_over_log2n", t.r_hat / log2_size(series.config.n)}});
  return r;
}

// Connected subsets S of the giant cluster with size_floor <= |S| <= |cluster|/2,
// drawn from breadth-first balls and voltage level sets. Boundaries are taken
// inside the cluster. Reports the smallest |dS| / |S|^(1/2) seen, which can
// only overestimate the true minimum.
struct ProbeTrial {
  std::size_t trial = 0;
  std::size_t giant_size = 0;
  std::size_t candidates = 0;
  double min_ratio = kInfinity;
  std::size_t witness_size = 0;
  std::size_t witness_boundary = 0;
  std::string witness_kind;
};

struct ProbeResult {
  PercConfig config;
  double size_floor_factor = 7.0;
  std::size_t size_floor = 0;
  std::vector<ProbeTrial> trials;
  double min_ratio = kInfinity;
};

inline ProbeResult percolation_boundary_probe(const PercConfig& c, double size_floor_factor = 7.0,
                                              const SolverOptions& solver = {}) {
  check_config(c);
  if (!(size_floor_factor > 0)) throw ParameterError("size floor factor must be positive");
  ProbeResult out;
  out.config = c;
  out.size_floor_factor = size_floor_factor;
  out.size_floor = static_cast<std::size_t>(std::ceil(size_floor_factor * log2_size(c.n)));
  for (std::size_t t = 0; t < c.trials; ++t) {
    const Graph g = percolate(c, t);
    const auto sub = induced_subgraph(g, giant_component(g));
    const Graph& h = sub.graph;
    ProbeTrial rec;
    rec.trial = t;
    rec.giant_size = h.vertex_count();
    const std::size_t top = h.vertex_count() / 2;
    auto scan = [&](const std::vector<Vertex>& order, const std::vector<std::size_t>& sizes, const char* kind) {
      const auto bounds = detail::prefix_boundaries(h, order);
      for (std::size_t k : sizes) {
        if (k < out.size_floor || k > top) continue;
        ++rec.candidates;
        const double ratio = static_cast<double>(bounds[k]) / std::sqrt(static_cast<double>(k));
        if (ratio < rec.min_ratio) {
          rec.min_ratio = ratio;
          rec.witness_size = k;
          rec.witness_boundary = bounds[k];
          rec.witness_kind = kind;
        }
      }
    };
    if (top >= out.size_floor) {
      const auto pairs = sample_pairs(h, c.pair_budget, trial_seed(c, t, 2));
      std::vector<Vertex> centers;
      for (auto [a, b] : pairs) {
        centers.push_back(a);
        centers.push_back(b);
      }
      std::sort(centers.begin(), centers.end());
      centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
      for (Vertex center : centers) {
        const auto dist = bfs_distances(h, center);
        const auto order = bfs_order(h, center);
        std::vector<std::size_t> ball_sizes;
        for (std::size_t k = 1; k <= order.size(); ++k)
          if (k == order.size() || dist[order[k]] != dist[order[k - 1]]) ball_sizes.push_back(k);
        scan(order, ball_sizes, "ball");
      }
      const auto profile = solve_voltages(h, pairs.front().first, pairs.front().second, solver);
      const auto seq = level_sets(profile, h);
      std::vector<std::size_t> all(seq.size());
      std::iota(all.begin(), all.end(), std::size_t{1});
      scan(seq.order, all, "level_set");
    }
    out.min_ratio = std::min(out.min_ratio, rec.min_ratio);
    out.trials.push_back(rec);
  }
  return out;
}

inline Report to_report(const ProbeResult& p) {
  Report r;
  r.command = "perc-boundary";
  r.config = perc_config_json(p.config);
  r.config["size_floor_factor"] = p.size_floor_factor;
  r.summary = {{"size_floor", p.size_floor},
               {"min_boundary_over_sqrt_size", ext(p.min_ratio)},
               {"kind", "heuristic upper bound"}};
  for (const auto& t : p.trials)
    r.rows.push_back({{"trial", t.trial},
                      {"giant_size", t.giant_size},
                      {"candidates", t.candidates},
                      {"min_ratio", ext(t.min_ratio)},
                      {"witness_size", t.witness_size},
                      {"witness_boundary", t.witness_boundary},
                      {"witness_kind", t.witness_kind}});
  return r;
}

// -- Conjecture probes ---------------------------------------------------------------

struct Conjecture1Probe {
  std::size_t vertex_count = 0;
  std::size_t diameter = 0;
  double alpha = 0.0;  // log diam / log |G|
  ExpansionResult min;  // of |dS| / |S|^(1 - alpha)
};

inline Conjecture1Probe conjecture1_probe(const Graph& g, std::optional<Mode> mode = std::nullopt,
                                          const ExactLimits& limits = {}) {
  if (g.vertex_count() < 2) throw ParameterError("probe needs at least two vertices");
  Conjecture1Probe out;
  out.vertex_count = g.vertex_count();
  out.diameter = diameter(g);
  out.alpha = std::log(static_cast<double>(out.diameter)) / std::log(static_cast<double>(out.vertex_count));
  const Mode m = mode.value_or(g.vertex_count() <= limits.gate ? Mode::exact : Mode::heuristic);
  const double power = 1.0 - out.alpha;
  out.min = min_vertex_expansion(
      g, [&](std::size_t s, std::size_t b) { return static_cast<double>(b) / std::pow(static_cast<double>(s), power); },
      m, limits);
  return out;
}

inline Report to_report(const Conjecture1Probe& p, const std::string& source) {
  Report r;
  r.command = "conj1";
  r.config = {{"graph", source}, {"mode", to_string(p.min.mode)}};
  r.summary = {{"vertices", p.vertex_count},
               {"diameter", p.diameter},
               {"alpha", p.alpha},
               {"min_ratio", ext(p.min.value)},
               {"witness_size", p.min.witness.size()},
               {"witness", to_json(p.min.witness)}};
  return r;
}

struct Conjecture2Probe {
  std::size_t vertex_count = 0;
  std::size_t diameter = 0;
  bool diameter_exact = true;
  double max_resistance = 0.0;
  Vertex a = 0, b = 0;
  bool sampled = false;
  double bound_term = 0.0;  // diam^2 log2|G| / |G|
  double gap = 0.0;         // max R - bound_term
};

inline constexpr std::size_t kDenseResistanceLimit = 300;

inline Conjecture2Probe conjecture2_probe(const Graph& g, std::size_t pair_budget = 32, std::uint64_t seed = 0) {
  if (g.vertex_count() < 2) throw ParameterError("probe needs at least two vertices");
  if (!is_connected(g)) throw ParameterError("probe requires a connected graph");
  Conjecture2Probe out;
  const std::size_t n = g.vertex_count();
  out.vertex_count = n;
  if (n <= 4096) {
    out.diameter = diameter(g);
  } else {
    out.diameter = double_sweep(g, 0).distance;
    out.diameter_exact = false;
  }
  out.max_resistance = -1.0;
  if (n <= kDenseResistanceLimit) {
    const auto r = resistance_matrix(g);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        if (r(a, b) > out.max_resistance) {
          out.max_resistance = r(a, b);
          out.a = a;
          out.b = b;
        }
  } else {
    out.sampled = true;
    const auto pairs = sample_pairs(g, pair_budget, derive_seed(seed, {n}));
    const GroundedLaplacian lap(g, pairs.front().first);
    for (auto [a, b] : pairs) {
      const double r = lap.resistance(a, b);
      if (r > out.max_resistance) {
        out.max_resistance = r;
        out.a = a;
        out.b = b;
      }
    }
  }
  const double d = static_cast<double>(out.diameter);
  out.bound_term = d * d * log2_size(n) / static_cast<double>(n);
  out.gap = out.max_resistance - out.bound_term;
  return out;
}

inline Report to_report(const Conjecture2Probe& p, const std::string& source, std::size_t pair_budget,
                        std::uint64_t seed) {
  Report r;
  r.command = "conj2";
  r.config = {{"graph", source}, {"pair_budget", pair_budget}, {"seed", seed}};
  r.summary = {{"vertices", p.vertex_count},
               {"diameter", p.diameter},
               {"diameter_exact", p.diameter_exact},
               {"max_resistance", p.max_resistance},
               {"a", p.a},
               {"b", p.b},
               {"sampled", p.sampled},
               {"bound_term", p.bound_term},
               {"gap", p.gap}};
  return r;
}

}  // namespace isores
