#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isores/experiments.hpp"
#include "isores/graph_io.hpp"

namespace isores::cli {

struct CliConfig {
  std::string subcommand;
  std::string family;
  std::string input;
  std::string out;
  std::string format;  // json | csv; generate also defaults to the graph text format
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-10;
  std::string mode;  // exact | heuristic; empty picks exact within the gate
  bool override_gate = false;
  std::string pair;
  std::optional<Vertex> vertex;
  std::optional<std::size_t> band;
  std::size_t trials = 20;
  std::size_t pair_budget = 32;
  bool modified = false;
  std::size_t n = 32;
  std::string n_list;
  std::string m_list = "4,8,16";
  double p = 0.7;
  double size_floor = 7.0;
  std::size_t max_size = 18;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (item.empty() || used != item.size() || item.find('-') != std::string::npos) {
      throw UsageError(std::string("bad ") + what + " '" + text + "': expected comma-separated nonnegative integers");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

inline std::vector<std::size_t> size_list(const std::string& text, const char* what) {
  const auto raw = parse_list(text, what);
  return {raw.begin(), raw.end()};
}

inline VertexPair parse_pair(const std::string& text) {
  const auto v = parse_list(text, "--pair");
  if (v.size() != 2) throw UsageError("--pair expects A,B");
  return {static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1])};
}

// Subcommands that read a graph, and those whose output always depends on
// the seed.
inline bool needs_graph(const std::string& s) {
  static const std::set<std::string> names = {"generate", "resistance", "voltages", "lbound", "rn",
                                              "cheeger",  "balls",      "commute",  "tau-star", "simulate",
                                              "verify-theorem", "conj1", "conj2"};
  return names.count(s) > 0;
}

inline bool needs_seed(const std::string& s) {
  return s == "simulate" || s == "percolation" || s == "perc-boundary" || s == "constant-sweep";
}

struct Context {
  const CliConfig& cfg;
  Graph graph;
  std::string source;
  SolverOptions solver;
  ExactLimits limits;

  std::uint64_t seed() const { return cfg.seed.value_or(0); }

  Mode mode() const {
    if (!cfg.mode.empty()) return parse_mode(cfg.mode);
    return graph.vertex_count() <= limits.gate || cfg.override_gate ? Mode::exact : Mode::heuristic;
  }

  Vertex vertex() const {
    if (!cfg.vertex) throw UsageError(cfg.subcommand + " requires --vertex");
    check_vertex(graph, *cfg.vertex);
    return *cfg.vertex;
  }

  VertexPair pair() const {
    if (cfg.pair.empty()) throw UsageError(cfg.subcommand + " requires --pair A,B");
    const auto p = parse_pair(cfg.pair);
    check_vertex(graph, p.first);
    check_vertex(graph, p.second);
    if (p.first == p.second) throw ParameterError("pair endpoints must differ");
    return p;
  }

  HeuristicOptions heuristic() const {
    HeuristicOptions h;
    h.solver = solver;
    return h;
  }

  Json graph_config() const {
    return {{"graph", source}, {"vertices", graph.vertex_count()}, {"edges", graph.edge_count()},
            {"tolerance", solver.tolerance}};
  }
};

inline Report cmd_generate(const Context& c) {
  Report r;
  r.command = "generate";
  r.config = c.graph_config();
  r.summary = {{"vertices", c.graph.vertex_count()},
               {"edges", c.graph.edge_count()},
               {"total_multiplicity", c.graph.total_multiplicity()},
               {"connected", is_connected(c.graph)}};
  for (const auto& e : c.graph.edges()) r.rows.push_back({{"u", e.u}, {"v", e.v}, {"multiplicity", e.multiplicity}});
  return r;
}

inline Report cmd_resistance(const Context& c) {
  const auto [w, u] = c.pair();
  Report r;
  r.command = "resistance";
  r.config = c.graph_config();
  r.config["pair"] = {w, u};
  try {
    const auto p = solve_voltages(c.graph, w, u, c.solver);
    r.summary = {{"resistance", 1.0 / p.current}, {"w", w}, {"u", u}, {"residual", p.residual},
                 {"iterations", p.iterations}, {"solver", p.dense ? "dense" : "cg"}};
  } catch (const InfiniteResistance&) {
    r.summary = {{"resistance", "inf"}, {"w", w}, {"u", u}};
  }
  return r;
}

inline Report cmd_voltages(const Context& c) {
  const auto [w, u] = c.pair();
  const auto p = solve_voltages(c.graph, w, u, c.solver);
  const auto seq = level_sets(p, c.graph);
  Report r;
  r.command = "voltages";
  r.config = c.graph_config();
  r.config["pair"] = {w, u};
  r.summary = to_json(p, c.graph.vertex_count());
  r.summary["level_set_anomalies"] = seq.anomalies;
  for (std::size_t m = 1; m <= seq.size(); ++m)
    r.rows.push_back({{"m", m}, {"vertex", seq.order[m - 1]}, {"voltage", p.voltages[seq.order[m - 1]]},
                      {"theta", seq.theta[m - 1]}});
  return r;
}

inline Report cmd_lbound(const Context& c) {
  const Vertex v = c.vertex();
  Report r;
  r.command = "lbound";
  r.config = c.graph_config();
  r.config["vertex"] = v;
  r.config["modified"] = c.cfg.modified;
  const auto b = c.cfg.modified ? isoperimetric_sum_modified(c.graph, v, c.limits)
                                : isoperimetric_sum(c.graph, v, c.mode(), c.limits, c.heuristic());
  r.config["mode"] = to_string(b.mode);
  r.summary = to_json(b);
  for (const auto& t : b.terms) r.rows.push_back(to_json(t));
  return r;
}

inline Report cmd_rn(const Context& c) {
  const Vertex u = c.vertex();
  Report r;
  r.command = "rn";
  r.config = c.graph_config();
  r.config["vertex"] = u;
  r.config["mode"] = to_string(c.mode());
  std::vector<std::size_t> bands;
  if (c.cfg.band) {
    bands.push_back(*c.cfg.band);
  } else {
    for (std::size_t n = 1; n <= band_count(c.graph.vertex_count()); ++n) bands.push_back(n);
  }
  for (std::size_t n : bands) {
    const auto m = min_band_boundary(c.graph, u, n, c.mode(), c.limits, c.heuristic());
    r.rows.push_back({{"n", n},
                      {"band", to_json(m.band)},
                      {"boundary", m.boundary ? Json(*m.boundary) : Json("inf")},
                      {"witness", to_json(m.witness)}});
  }
  if (c.cfg.band) r.summary = r.rows[0];
  r.summary["u"] = u;
  r.summary["mode"] = to_string(c.mode());
  return r;
}

inline Report cmd_cheeger(const Context& c) {
  const auto res = cheeger(c.graph, c.mode(), c.limits);
  Report r;
  r.command = "cheeger";
  r.config = c.graph_config();
  r.config["mode"] = to_string(res.mode);
  r.summary = {{"cheeger", ext(res.value)}, {"witness", to_json(res.witness)}, {"witness_size", res.witness.size()},
               {"mode", to_string(res.mode)}};
  return r;
}

inline Report cmd_balls(const Context& c) {
  const Vertex v = c.vertex();
  Report r;
  r.command = "balls";
  r.config = c.graph_config();
  r.config["vertex"] = v;
  const auto profile = ball_profile(c.graph, v);
  for (const auto& b : profile) r.rows.push_back({{"radius", b.radius}, {"size", b.size}, {"boundary", b.boundary}});
  r.summary = {{"v", v}, {"eccentricity", profile.back().radius}};
  return r;
}

inline Report cmd_commute(const Context& c) {
  const auto [v, u] = c.pair();
  const double t = commute_time(c.graph, v, u, c.solver);
  const double res = effective_resistance(c.graph, v, u, c.solver);
  Report r;
  r.command = "commute";
  r.config = c.graph_config();
  r.config["pair"] = {v, u};
  const double n = static_cast<double>(c.graph.vertex_count());
  r.summary = {{"commute", ext(t)}, {"resistance", ext(res)}, {"vertices_times_resistance", ext(n * res)},
               {"identity_gap", std::isinf(t) ? Json(nullptr) : Json(std::abs(t - n * res))}};
  return r;
}

inline Report cmd_tau_star(const Context& c) {
  const auto t = tau_star(c.graph, c.solver, c.cfg.pair_budget, c.seed());
  Report r;
  r.command = "tau-star";
  r.config = c.graph_config();
  r.config["pair_budget"] = c.cfg.pair_budget;
  r.config["seed"] = c.seed();
  r.summary = {{"tau_star", t.value}, {"a", t.a}, {"b", t.b}, {"sampled", t.sampled},
               {"pairs_evaluated", t.pairs_evaluated}};
  return r;
}

inline Report cmd_simulate(const Context& c) {
  const auto [v, u] = c.pair();
  const auto est = simulate_hitting(c.graph, v, u, c.seed(), c.cfg.trials);
  const double exact = exact_hitting(c.graph, u, c.solver).values[v];
  Report r;
  r.command = "simulate";
  r.config = c.graph_config();
  r.config["pair"] = {v, u};
  r.config["seed"] = c.seed();
  r.config["trials"] = c.cfg.trials;
  r.summary = {{"mean", est.mean},
               {"standard_error", est.standard_error},
               {"trials", est.trials},
               {"exact", exact},
               {"z", est.standard_error > 0 ? Json((est.mean - exact) / est.standard_error) : Json(nullptr)}};
  return r;
}

inline Report cmd_verify(const Context& c) {
  std::vector<VertexPair> pairs;
  if (!c.cfg.pair.empty()) {
    pairs.push_back(c.pair());
  } else if (c.graph.vertex_count() <= 10) {
    pairs = all_pairs(c.graph.vertex_count());
  } else {
    pairs = sample_pairs(c.graph, c.cfg.pair_budget, c.seed());
  }
  const auto check = verify_theorem(c.graph, pairs, c.mode(), c.limits, c.heuristic(), c.solver);
  auto r = to_report(check, c.source);
  r.config["tolerance"] = c.solver.tolerance;
  r.config["seed"] = c.seed();
  return r;
}

inline Report cmd_sweep(const Context& c) {
  SweepConfig s;
  s.seed = c.seed();
  s.max_size = c.cfg.max_size;
  s.pair_budget = c.cfg.pair_budget;
  s.solver = c.solver;
  if (!c.cfg.mode.empty()) s.mode = parse_mode(c.cfg.mode);
  if (s.max_size > 18 && s.mode == Mode::exact) throw GateError("constant sweep in exact mode is limited to 18 vertices");
  return to_report(constant_sweep(s), s);
}

inline Report cmd_falsify(const Context& c) { return to_report(falsify_modified_band(size_list(c.cfg.m_list, "--m-list"))); }

inline Report cmd_layered(const Context& c) {
  auto r = to_report(layered_scaling(size_list(c.cfg.n_list.empty() ? "4,8,16,32" : c.cfg.n_list, "--n-list"), c.solver));
  r.config["tolerance"] = c.solver.tolerance;
  return r;
}

inline Report cmd_multiedge(const Context& c) {
  const auto ns = size_list(c.cfg.n_list.empty() ? "16,32,64,128,256" : c.cfg.n_list, "--n-list");
  auto r = to_report(multi_edge_tau_scaling(ns, c.cfg.pair_budget, c.seed(), c.solver), c.cfg.pair_budget, c.seed());
  r.config["tolerance"] = c.solver.tolerance;
  return r;
}

inline PercConfig perc_config(const Context& c) {
  PercConfig p;
  p.n = c.cfg.n;
  p.p = c.cfg.p;
  p.seed = c.seed();
  p.trials = c.cfg.trials;
  p.pair_budget = c.cfg.pair_budget;
  return p;
}

inline Report cmd_percolation(const Context& c) {
  const auto ns = c.cfg.n_list.empty() ? std::vector<std::size_t>{c.cfg.n} : size_list(c.cfg.n_list, "--n-list");
  return to_report(percolation_resistance(ns, perc_config(c)));
}

inline Report cmd_perc_boundary(const Context& c) {
  auto r = to_report(percolation_boundary_probe(perc_config(c), c.cfg.size_floor, c.solver));
  r.config["tolerance"] = c.solver.tolerance;
  return r;
}

inline Report cmd_conj1(const Context& c) {
  std::optional<Mode> m;
  if (!c.cfg.mode.empty()) m = parse_mode(c.cfg.mode);
  return to_report(conjecture1_probe(c.graph, m, c.limits), c.source);
}

inline Report cmd_conj2(const Context& c) {
  return to_report(conjecture2_probe(c.graph, c.cfg.pair_budget, c.seed()), c.source, c.cfg.pair_budget, c.seed());
}

inline const std::vector<std::pair<std::string, std::function<Report(const Context&)>>>& commands() {
  static const std::vector<std::pair<std::string, std::function<Report(const Context&)>>> table = {
      {"generate", cmd_generate},
      {"resistance", cmd_resistance},
      {"voltages", cmd_voltages},
      {"lbound", cmd_lbound},
      {"rn", cmd_rn},
      {"cheeger", cmd_cheeger},
      {"balls", cmd_balls},
      {"commute", cmd_commute},
      {"tau-star", cmd_tau_star},
      {"simulate", cmd_simulate},
      {"verify-theorem", cmd_verify},
      {"constant-sweep", cmd_sweep},
      {"falsify-band", cmd_falsify},
      {"layered-scaling", cmd_layered},
      {"multiedge-scaling", cmd_multiedge},
      {"percolation", cmd_percolation},
      {"perc-boundary", cmd_perc_boundary},
      {"conj1", cmd_conj1},
      {"conj2", cmd_conj2},
  };
  return table;
}

inline void add_options(CLI::App& app, CliConfig& c) {
  app.add_option("--family", c.family, "graph family spec, e.g. circulant:16,1,3");
  app.add_option("--input", c.input, "graph file");
  app.add_option("--out", c.out, "write the report here instead of stdout");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", c.seed, "root seed");
  app.add_option("--tolerance", c.tolerance, "solver relative residual")->check(CLI::PositiveNumber);
  app.add_option("--mode", c.mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
  app.add_flag("--override-gate", c.override_gate, "allow exact mode above 18 vertices");
  app.add_option("--pair", c.pair, "vertex pair A,B");
  app.add_option("--vertex", c.vertex, "anchor vertex");
  app.add_option("--band", c.band, "band index n");
  app.add_option("--trials", c.trials, "number of trials")->check(CLI::PositiveNumber);
  app.add_option("--pair-budget", c.pair_budget, "random pairs per graph");
  app.add_flag("--modified", c.modified, "lower every band's upper end by one");
  app.add_option("--n", c.n, "box side");
  app.add_option("--n-list", c.n_list, "comma-separated sizes");
  app.add_option("--m-list", c.m_list, "comma-separated clique sizes");
  app.add_option("--p", c.p, "bond retention probability");
  app.add_option("--size-floor", c.size_floor, "minimum set size as a multiple of log2 n");
  app.add_option("--max-size", c.max_size, "largest corpus graph");
}

inline std::string render(const Report& r, const std::string& format, std::optional<double> wall) {
  if (format == "csv") return report_csv(r);
  return report_json(r, wall).dump(2) + "\n";
}

inline void emit(const CliConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ParameterError("cannot write '" + cfg.out + "'");
  f << text;
}

inline Graph load_graph(const CliConfig& cfg, std::string& source) {
  if (!cfg.family.empty()) {
    source = cfg.family;
    return generate(cfg.family);
  }
  std::ifstream f(cfg.input);
  if (!f) throw ParameterError("cannot read '" + cfg.input + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  source = "file:" + cfg.input;
  return read_graph(ss.str());
}

// Exit codes: 0 success, 2 usage error (message on `err`), 1 runtime error
// (structured error report on the output).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective resistance, isoperimetric bounds and random-walk experiments", "isores"};
  app.require_subcommand(1);
  app.fallthrough();
  CliConfig cfg;
  add_options(app, cfg);
  for (const auto& [name, fn] : commands()) app.add_subcommand(name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    const bool has_family = !cfg.family.empty(), has_input = !cfg.input.empty();
    if (needs_graph(cfg.subcommand)) {
      if (has_family == has_input) throw UsageError(cfg.subcommand + " requires exactly one of --family or --input");
    } else if (has_family || has_input) {
      throw UsageError(cfg.subcommand + " does not take a graph");
    }
    if (needs_seed(cfg.subcommand) && !cfg.seed) throw UsageError(cfg.subcommand + " requires --seed");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Context ctx{cfg, Graph(0, {}), "", {}, {}};
    ctx.solver.tolerance = cfg.tolerance;
    ctx.limits.override_gate = cfg.override_gate;
    if (needs_graph(cfg.subcommand)) ctx.graph = load_graph(cfg, ctx.source);
    if (cfg.subcommand == "generate" && cfg.format.empty()) {
      emit(cfg, out, write_graph(ctx.graph));
      return 0;
    }
    Report report;
    for (const auto& [name, fn] : commands())
      if (name == cfg.subcommand) report = fn(ctx);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(cfg, out, render(report, cfg.format, wall));
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    const std::string text = error_json(cfg.subcommand, e).dump(2) + "\n";
    try {
      emit(cfg, out, text);
    } catch (const Error&) {
      out << text;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace isores::cli
