#include <gtest/gtest.h>

#include <cmath>

#include "isores/electrical.hpp"
#include "isores/generators.hpp"
#include "oracles.hpp"

using namespace isores;

namespace {

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> specs = {
      "path:2",     "path:5",      "cycle:4",     "cycle:7",     "complete:4",      "complete:6",
      "star:6",     "grid2d:3",    "hypercube:3", "circulant:8,1,3", "layered:1",   "random:8,5,3",
      "random:9,3,8", "multi_edge_cycle:8", "torus2d:3"};
  return specs;
}

SolverOptions iterative() {
  SolverOptions o;
  o.dense_limit = 0;
  return o;
}

oracle::Rational solve_small(std::vector<std::vector<oracle::Rational>> a) {
  // Solves the 3x3 layer system in place; returns x_0.
  const std::size_t m = a.size();
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      const oracle::Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  return a[0][m] / a[0][0];
}

}  // namespace

TEST(SolveVoltages, PathMidpoint) {
  const auto p = solve_voltages(generate("path:3"), 0, 2);
  EXPECT_DOUBLE_EQ(p.voltages[0], 1.0);
  EXPECT_DOUBLE_EQ(p.voltages[2], 0.0);
  EXPECT_NEAR(p.voltages[1], 0.5, 1e-12);
  EXPECT_NEAR(p.current, 0.5, 1e-12);
}

TEST(SolveVoltages, ParallelEdges) {
  const Graph g(2, {{0, 1, 2}});
  EXPECT_NEAR(solve_voltages(g, 0, 1).current, 2.0, 1e-12);
}

TEST(SolveVoltages, LayeredExampleMatchesLayerOracle) {
  using R = oracle::Rational;
  const std::size_t n = 4;
  const R nn(n), n2(n * n);
  // unknowns V2, V3, V4 (one value per layer); V1 = 1, V5 = 0
  std::vector<std::vector<R>> a = {
      {R(1) + n2, -n2, R(0), R(1)},
      {-nn, R(2) * nn, -nn, R(0)},
      {R(0), -n2, n2 + R(1), R(0)},
  };
  const R v2 = solve_small(a);
  const R current = nn * (R(1) - v2);
  const auto g = layered_example_graph(n);
  const auto w = layered_layer(n, 0).first;
  const auto u = layered_layer(n, 4).first;
  for (const auto& opts : {SolverOptions{}, iterative()}) {
    const auto p = solve_voltages(g, w, u, opts);
    EXPECT_NEAR(p.current, static_cast<double>(current), 1e-9 * static_cast<double>(current));
  }
  EXPECT_NEAR(1.0 / static_cast<double>(current), 2.0 / 4 + 2.0 / 64, 1e-15);
}

TEST(SolveVoltages, InvariantsHoldOnCorpus) {
  for (const auto& spec : corpus()) {
    const auto g = generate(spec);
    for (const auto& opts : {SolverOptions{}, iterative()}) {
      const auto p = solve_voltages(g, 0, static_cast<Vertex>(g.vertex_count() - 1), opts);
      EXPECT_EQ(p.voltages[0], 1.0);
      EXPECT_EQ(p.voltages[g.vertex_count() - 1], 0.0);
      for (double x : p.voltages) {
        EXPECT_GE(x, -1e-12);
        EXPECT_LE(x, 1.0 + 1e-12);
      }
      EXPECT_LE(p.residual, opts.tolerance);
      EXPECT_LT(max_kirchhoff_defect(p, g), 1e-8) << spec;
      EXPECT_TRUE(check_maximum_principle(p, g).holds) << spec;
    }
  }
}

TEST(SolveVoltages, Errors) {
  const auto g = generate("union(complete:3,complete:3)");
  EXPECT_THROW(solve_voltages(g, 0, 4), InfiniteResistance);
  EXPECT_THROW(solve_voltages(g, 1, 1), ParameterError);
  EXPECT_THROW(solve_voltages(g, 0, 9), ParameterError);
  SolverOptions starved = iterative();
  starved.iteration_factor = 0;
  EXPECT_THROW(solve_voltages(generate("grid2d:6"), 0, 35, starved), ConvergenceError);
}

TEST(SolveVoltages, VerticesOutsideComponentAreZero) {
  const auto g = generate("union(path:3,path:3)");
  const auto p = solve_voltages(g, 0, 2);
  EXPECT_EQ(p.component, (std::vector<Vertex>{0, 1, 2}));
  for (Vertex v = 3; v < 6; ++v) EXPECT_EQ(p.voltages[v], 0.0);
}

TEST(EffectiveResistance, ClosedForms) {
  EXPECT_NEAR(effective_resistance(generate("path:5"), 0, 4), 4.0, 1e-9);
  EXPECT_NEAR(effective_resistance(generate("cycle:4"), 0, 1), 0.75, 1e-9);
  EXPECT_NEAR(effective_resistance(generate("complete:4"), 1, 3), 0.5, 1e-9);
  EXPECT_TRUE(std::isinf(effective_resistance(generate("union(complete:3,complete:3)"), 0, 3)));
}

TEST(EffectiveResistance, MatchesRationalOracle) {
  for (const auto& spec : corpus()) {
    const auto g = generate(spec);
    if (g.vertex_count() > 9) continue;
    for (Vertex a = 0; a < g.vertex_count(); ++a)
      for (Vertex b = a + 1; b < g.vertex_count(); ++b) {
        const double exact = static_cast<double>(oracle::exact_resistance(g, a, b));
        for (const auto& opts : {SolverOptions{}, iterative()}) {
          const double r = effective_resistance(g, a, b, opts);
          EXPECT_LE(std::abs(r - exact), 1e-9 * exact) << spec << " " << a << "," << b;
        }
      }
  }
}

TEST(EffectiveResistance, SymmetryDoublingAndTriangle) {
  const double tol = SolverOptions{}.tolerance;
  for (const auto& spec : corpus()) {
    const auto g = generate(spec);
    if (g.vertex_count() > 8) continue;
    const auto doubled = scale_multiplicities(g, 2);
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        if (a != b) r[a][b] = effective_resistance(g, a, b);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        EXPECT_LE(std::abs(r[a][b] - r[b][a]), 2 * tol * std::max(1.0, r[a][b]));
        EXPECT_NEAR(effective_resistance(doubled, a, b), r[a][b] / 2, 2 * tol * std::max(1.0, r[a][b]));
        for (Vertex c = 0; c < n; ++c)
          if (c != a && c != b) { EXPECT_LE(r[a][c], r[a][b] + r[b][c] + 4 * tol) << spec; }
      }
  }
}

// Rayleigh monotonicity: removing any edge record never lowers the resistance
// between any pair.
TEST(EffectiveResistance, RayleighMonotonicity) {
  for (const auto& spec : corpus()) {
    const auto g = generate(spec);
    if (g.vertex_count() > 8) continue;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto h = remove_edge_record(g, e);
      for (Vertex a = 0; a < g.vertex_count(); ++a)
        for (Vertex b = a + 1; b < g.vertex_count(); ++b) {
          const double before = effective_resistance(g, a, b);
          const double after = effective_resistance(h, a, b);
          EXPECT_GE(after, before - 1e-9 * before) << spec << " edge " << e;
        }
    }
  }
}

// Series law: glue b's vertex 0 onto a's vertex a_end; resistances through the
// cut vertex add.
TEST(EffectiveResistance, SeriesThroughCutVertex) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"cycle:5", "complete:4"}, {"grid2d:3", "path:4"}, {"hypercube:3", "circulant:7,1,2"}, {"star:5", "cycle:6"}};
  for (const auto& [sa, sb] : pairs) {
    const auto a = generate(sa), b = generate(sb);
    const Vertex a_end = static_cast<Vertex>(a.vertex_count() - 1);
    const Vertex b_far = static_cast<Vertex>(b.vertex_count() - 1);
    std::vector<Edge> edges(a.edges().begin(), a.edges().end());
    const Vertex offset = static_cast<Vertex>(a.vertex_count() - 1);
    auto map = [&](Vertex x) { return x == 0 ? a_end : x + offset; };
    for (const auto& e : b.edges()) {
      const Vertex x = map(e.u), y = map(e.v);
      edges.push_back({std::min(x, y), std::max(x, y), e.multiplicity});
    }
    const Graph joined(a.vertex_count() + b.vertex_count() - 1, edges);
    const double expected = effective_resistance(a, 0, a_end) + effective_resistance(b, 0, b_far);
    EXPECT_NEAR(effective_resistance(joined, 0, map(b_far)), expected, 1e-10 * expected) << sa << " + " << sb;
  }
}

TEST(VertexCurrent, Examples) {
  {
    const auto g = generate("path:3");
    const auto p = solve_voltages(g, 0, 2);
    EXPECT_NEAR(vertex_current(p, g, 1, {2}), 0.5, 1e-12);
  }
  {
    const auto g = generate("cycle:4");
    const auto p = solve_voltages(g, 0, 2);
    // two parallel 2-ohm arcs
    EXPECT_NEAR(p.current, 1.0, 1e-12);
    EXPECT_NEAR(vertex_current(p, g, 1, {2}), 0.5, 1e-12);
    EXPECT_NEAR(vertex_current(p, g, 3, {2}), 0.5, 1e-12);
  }
  {
    const std::size_t n = 2;
    const auto g = layered_example_graph(n);
    const auto p = solve_voltages(g, layered_layer(n, 0).first, layered_layer(n, 4).first);
    std::vector<Vertex> a;
    for (int layer : {3, 4})
      for (Vertex x = layered_layer(n, layer).first; x < layered_layer(n, layer).second; ++x) a.push_back(x);
    const VertexSet set(a);
    double sum = 0.0;
    for (Vertex v = layered_layer(n, 2).first; v < layered_layer(n, 2).second; ++v) {
      const double c = vertex_current(p, g, v, set);
      EXPECT_NEAR(c, p.current / 4, 1e-12);
      sum += c;
    }
    EXPECT_NEAR(sum, p.current, 1e-12);
  }
}

TEST(VertexCurrent, RejectsNonBoundaryVertices) {
  const auto g = generate("path:4");
  const auto p = solve_voltages(g, 0, 3);
  EXPECT_THROW(vertex_current(p, g, 0, {3}), ParameterError);
  EXPECT_THROW(vertex_current(p, g, 3, {3}), ParameterError);
}

// Summed over the boundary of any level set, vertex currents carry the full
// battery current.
TEST(VertexCurrent, BoundaryOfLevelSetsCarriesTotalCurrent) {
  for (const auto& spec : corpus()) {
    const auto g = generate(spec);
    const Vertex u = static_cast<Vertex>(g.vertex_count() - 1);
    const auto p = solve_voltages(g, 0, u);
    const auto seq = level_sets(p, g);
    for (std::size_t m = 1; m < seq.size(); ++m) {
      const auto ls = seq.at(m);
      if (ls.members.contains(0)) break;
      double sum = 0.0;
      for (Vertex v : external_boundary(g, ls.members)) sum += vertex_current(p, g, v, ls.members);
      EXPECT_NEAR(sum, p.current, 1e-8 * std::max(1.0, p.current)) << spec << " m=" << m;
    }
  }
}

TEST(LevelSets, Examples) {
  {
    const auto g = generate("path:3");
    const auto p = solve_voltages(g, 0, 2);
    const auto ls = level_set(p, g, 2);
    EXPECT_EQ(ls.members, VertexSet({1, 2}));
    EXPECT_NEAR(ls.theta, 0.5, 1e-12);
    EXPECT_EQ(level_set(p, g, 1).members, VertexSet({2}));
    EXPECT_EQ(level_set(p, g, 1).theta, 0.0);
    EXPECT_THROW(level_set(p, g, 0), ParameterError);
    EXPECT_THROW(level_set(p, g, 4), ParameterError);
  }
  {
    const auto g = generate("cycle:4");
    const auto p = solve_voltages(g, 0, 2);
    const auto first = level_set(p, g, 2);
    EXPECT_TRUE(first.members == VertexSet({1, 2}) || first.members == VertexSet({2, 3}));
    EXPECT_TRUE(is_connected_subset(g, first.members));
    for (int i = 0; i < 5; ++i) EXPECT_EQ(level_set(solve_voltages(g, 0, 2), g, 2).members, first.members);
  }
}

TEST(LevelSets, NestedConnectedMonotoneOnCorpus) {
  for (const auto& spec : corpus()) {
    const auto g = generate(spec);
    for (Vertex w = 0; w < g.vertex_count(); ++w)
      for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (w == u) continue;
        const auto p = solve_voltages(g, w, u);
        const auto seq = level_sets(p, g);
        EXPECT_EQ(seq.anomalies, 0u);
        EXPECT_EQ(seq.theta[0], 0.0);
        VertexSet prev;
        for (std::size_t m = 1; m <= seq.size(); ++m) {
          const auto ls = seq.at(m);
          EXPECT_TRUE(ls.members.contains(u));
          EXPECT_TRUE(is_connected_subset(g, ls.members));
          EXPECT_TRUE(std::includes(ls.members.begin(), ls.members.end(), prev.begin(), prev.end()));
          if (m > 1) { EXPECT_GE(ls.theta, seq.theta[m - 2]); }
          prev = ls.members;
        }
      }
  }
}

TEST(LevelSets, NonAdjacentMinimumStaysConnected) {
  // path 0-1-2-3 with vertex 3 below vertex 1: violates the maximum principle
  const auto g = generate("path:4");
  VoltageProfile p;
  p.source = 2;
  p.sink = 0;
  p.voltages = {0.0, 0.5, 1.0, 0.1};
  p.component = {0, 1, 2, 3};
  const auto seq = level_sets(p, g);
  EXPECT_EQ(seq.order, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(seq.anomalies, 2u);
  EXPECT_EQ(seq.theta, (std::vector<double>{0.0, 0.5, 1.0, 1.0}));
  for (std::size_t m = 1; m <= 4; ++m) EXPECT_TRUE(is_connected_subset(g, seq.at(m).members));

  // a float-level split inside the tie slack is not an anomaly
  VoltageProfile q;
  q.source = 2;
  q.sink = 0;
  q.voltages = {0.0, 0.3 + 5e-13, 0.3};
  q.component = {0, 1, 2};
  const auto tied = level_sets(q, generate("path:3"));
  EXPECT_EQ(tied.anomalies, 0u);
  EXPECT_EQ(tied.order, (std::vector<Vertex>{0, 1, 2}));
  q.voltages[1] = 0.3 + 5e-12;
  EXPECT_EQ(level_sets(q, generate("path:3")).anomalies, 1u);
}

TEST(MaximumPrinciple, DetectsConstructedViolation) {
  const auto g = generate("path:4");
  auto p = solve_voltages(g, 0, 3);
  EXPECT_TRUE(check_maximum_principle(p, g).holds);
  p.voltages[1] = 1.5;
  const auto check = check_maximum_principle(p, g);
  EXPECT_FALSE(check.holds);
  ASSERT_TRUE(check.witness.has_value());
  EXPECT_EQ(*check.witness, 1u);
}

TEST(GroundedLaplacian, AgreesWithIterativeSolve) {
  for (const auto* spec : {"grid2d:12", "torus2d:9", "layered:5", "random:150,80,4"}) {
    const auto g = generate(spec);
    const GroundedLaplacian factor(g, 3);
    const auto r = resistance_matrix(g);
    const auto far = double_sweep(g, 0);
    for (auto [a, b] : {std::pair<Vertex, Vertex>(far.a, far.b), {0, 1}, {3, 7}, {5, 3}}) {
      const double cg = effective_resistance(g, a, b, iterative());
      EXPECT_NEAR(factor.resistance(a, b), cg, 1e-8 * cg) << spec;
      EXPECT_NEAR(r(a, b), cg, 1e-8 * cg) << spec;
    }
  }
}
