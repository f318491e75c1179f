#pragma once

// Independent reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "isores/graph.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using isores::Graph;
using isores::Vertex;

// Effective resistance by exact Gaussian elimination on the reduced Laplacian
// with V(w) = 1, V(u) = 0. Assumes g is connected.
inline Rational exact_resistance(const Graph& g, Vertex w, Vertex u) {
  const std::size_t n = g.vertex_count();
  std::vector<int> index(n, -1);
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v)
    if (v != w && v != u) {
      index[v] = static_cast<int>(free.size());
      free.push_back(v);
    }
  const std::size_t m = free.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
  for (const auto& e : g.edges()) {
    const Rational c(e.multiplicity);
    for (auto [x, y] : {std::pair(e.u, e.v), std::pair(e.v, e.u)}) {
      if (index[x] < 0) continue;
      auto& row = a[static_cast<std::size_t>(index[x])];
      row[static_cast<std::size_t>(index[x])] += c;
      if (index[y] >= 0) row[static_cast<std::size_t>(index[y])] -= c;
      else if (y == w) row[m] += c;
    }
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k <= m; ++k) a[r][k] -= f * a[col][k];
    }
  }
  std::vector<Rational> volt(n, Rational(0));
  volt[w] = 1;
  for (std::size_t i = 0; i < m; ++i) volt[free[i]] = a[i][m] / a[i][i];
  Rational current = 0;
  for (const auto& nb : g.neighbors(w)) current += Rational(nb.multiplicity) * (Rational(1) - volt[nb.vertex]);
  return Rational(1) / current;
}

// Connectivity of the induced subgraph by union-find over edge records.
inline bool induced_connected(const Graph& g, std::uint64_t mask) {
  if (mask == 0) return false;
  std::vector<Vertex> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges())
    if ((mask >> e.u & 1) && (mask >> e.v & 1)) parent[find(e.u)] = find(e.v);
  Vertex root = std::numeric_limits<Vertex>::max();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!(mask >> v & 1)) continue;
    if (root == std::numeric_limits<Vertex>::max()) root = find(v);
    else if (find(v) != root) return false;
  }
  return true;
}

inline std::size_t boundary_of(const Graph& g, std::uint64_t mask) {
  std::uint64_t b = 0;
  for (const auto& e : g.edges()) {
    if ((mask >> e.u & 1) && !(mask >> e.v & 1)) b |= std::uint64_t{1} << e.v;
    if ((mask >> e.v & 1) && !(mask >> e.u & 1)) b |= std::uint64_t{1} << e.u;
  }
  return static_cast<std::size_t>(__builtin_popcountll(b));
}

struct BruteBand {
  bool any = false;
  double max_term = -1.0;
  std::size_t min_boundary = std::numeric_limits<std::size_t>::max();
  std::size_t count = 0;
};

// All 2^|G| subsets filtered to connected sets containing v with size in
// [lo, hi] (sizes compared as signed so an empty band has lo > hi).
inline BruteBand brute_band(const Graph& g, Vertex v, long lo, long hi) {
  BruteBand out;
  const std::size_t n = g.vertex_count();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    if (!(s >> v & 1)) continue;
    const long size = __builtin_popcountll(s);
    if (size < lo || size > hi) continue;
    if (!induced_connected(g, s)) continue;
    const std::size_t b = boundary_of(g, s);
    const double term = b == 0 ? std::numeric_limits<double>::infinity()
                               : static_cast<double>(size) / static_cast<double>(b * b) + 1.0 / static_cast<double>(b);
    out.any = true;
    ++out.count;
    if (term > out.max_term) out.max_term = term;
    if (b < out.min_boundary) out.min_boundary = b;
  }
  return out;
}

// L_v by brute force. Band n holds sizes s with s * 2^(n+1) > N and
// s * 2^n <= N, found by scanning; `shift` lowers the upper end.
inline double brute_isoperimetric_sum(const Graph& g, Vertex v, long shift = 0) {
  const long n = static_cast<long>(g.vertex_count());
  double total = 0.0;
  for (long k = 1; (1L << k) <= n; ++k) {
    long lo = 1, hi = 0;
    while (lo * (1L << (k + 1)) <= n) ++lo;
    while ((hi + 1) * (1L << k) <= n) ++hi;
    const auto band = brute_band(g, v, lo, hi - shift);
    if (band.any) total += band.max_term;
  }
  return total;
}

}  // namespace oracle
