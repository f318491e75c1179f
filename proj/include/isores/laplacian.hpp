#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "isores/error.hpp"
#include "isores/graph.hpp"

namespace isores {

struct SolverOptions {
  // Relative residual ||L_reduced x - b|| / ||b|| required on exit.
  double tolerance = 1e-10;
  // Components with fewer vertices than this are solved by dense Cholesky.
  std::size_t dense_limit = 200;
  // CG iteration cap is iteration_factor * |component|.
  std::size_t iteration_factor = 20;
};

struct DirichletSolution {
  std::vector<double> values;  // indexed by vertex id of the whole graph
  double residual = 0.0;
  std::size_t iterations = 0;
  bool dense = false;
};

namespace detail {

// The weighted Laplacian restricted to the free (unpinned) vertices of one
// component, in compressed row form.
struct ReducedSystem {
  std::vector<Vertex> free;              // reduced index -> vertex
  std::vector<double> diagonal;
  std::vector<std::size_t> row_offsets;  // off-diagonal entries per row
  std::vector<std::size_t> columns;
  std::vector<double> values;
  std::vector<double> rhs;

  std::size_t size() const { return free.size(); }

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    for (std::size_t i = 0; i < size(); ++i) {
      double s = diagonal[i] * x[i];
      for (std::size_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) s += values[k] * x[columns[k]];
      y[i] = s;
    }
  }

  double relative_residual(const std::vector<double>& x) const {
    std::vector<double> ax(size());
    multiply(x, ax);
    double rr = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      rr += (ax[i] - rhs[i]) * (ax[i] - rhs[i]);
      bb += rhs[i] * rhs[i];
    }
    return bb == 0.0 ? std::sqrt(rr) : std::sqrt(rr / bb);
  }
};

inline ReducedSystem build_reduced(const Graph& g, std::span<const Vertex> component,
                                   std::span<const std::pair<Vertex, double>> pinned,
                                   std::span<const double> source) {
  constexpr std::size_t kPinned = static_cast<std::size_t>(-2);
  std::vector<std::size_t> index(g.vertex_count(), kUnreachable);
  std::vector<double> pinned_value(g.vertex_count(), 0.0);
  for (auto [v, value] : pinned) {
    index[v] = kPinned;
    pinned_value[v] = value;
  }
  ReducedSystem sys;
  for (Vertex v : component) {
    if (index[v] == kPinned) continue;
    index[v] = sys.free.size();
    sys.free.push_back(v);
  }
  sys.diagonal.resize(sys.size());
  sys.rhs.resize(sys.size());
  sys.row_offsets.push_back(0);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const Vertex v = sys.free[i];
    double b = source.empty() ? 0.0 : source[v];
    double d = 0.0;
    for (const auto& nb : g.neighbors(v)) {
      d += nb.multiplicity;
      const auto j = index[nb.vertex];
      if (j == kPinned) {
        b += nb.multiplicity * pinned_value[nb.vertex];
      } else {
        sys.columns.push_back(j);
        sys.values.push_back(-static_cast<double>(nb.multiplicity));
      }
    }
    sys.diagonal[i] = d;
    sys.rhs[i] = b;
    sys.row_offsets.push_back(sys.columns.size());
  }
  return sys;
}

inline std::vector<double> dense_solve(const ReducedSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = sys.diagonal[static_cast<std::size_t>(i)];
    b(i) = sys.rhs[static_cast<std::size_t>(i)];
    for (auto k = sys.row_offsets[static_cast<std::size_t>(i)]; k < sys.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      a(i, static_cast<Eigen::Index>(sys.columns[k])) += sys.values[k];
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw InternalError("reduced Laplacian is not positive definite");
  Eigen::VectorXd x = llt.solve(b);
  return {x.data(), x.data() + n};
}

// Jacobi-preconditioned conjugate gradient, restarted from the current
// iterate whenever the recursive residual drifts from the true one.
inline std::vector<double> cg_solve(const ReducedSystem& sys, double tolerance, std::size_t max_iterations,
                                    std::size_t& iterations) {
  const std::size_t n = sys.size();
  std::vector<double> x(n, 0.0), r(sys.rhs), z(n), p(n), ap(n);
  double bnorm = 0.0;
  for (double b : sys.rhs) bnorm += b * b;
  bnorm = std::sqrt(bnorm);
  iterations = 0;
  if (bnorm == 0.0) return x;
  const double target = tolerance * bnorm;

  while (iterations < max_iterations) {
    double rz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = r[i] / sys.diagonal[i];
      p[i] = z[i];
      rz += r[i] * z[i];
    }
    double rnorm = 0.0;
    for (double ri : r) rnorm += ri * ri;
    if (std::sqrt(rnorm) <= target) break;

    while (iterations < max_iterations) {
      sys.multiply(p, ap);
      double pap = 0.0;
      for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
      if (pap <= 0.0) break;
      const double alpha = rz / pap;
      rnorm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
        rnorm += r[i] * r[i];
      }
      ++iterations;
      if (std::sqrt(rnorm) <= target) break;
      double rz_next = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        z[i] = r[i] / sys.diagonal[i];
        rz_next += r[i] * z[i];
      }
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    // Recompute the true residual before deciding convergence.
    sys.multiply(x, ap);
    rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = sys.rhs[i] - ap[i];
      rnorm += r[i] * r[i];
    }
    if (std::sqrt(rnorm) <= target) break;
  }
  return x;
}

}  // namespace detail

// Solves the weighted-Laplacian equations L x = source on the free vertices of
// `component`, with x fixed on `pinned`. Vertices outside the component get 0.
// Every vertex of `component` must be reachable from a pinned vertex inside it.
inline DirichletSolution solve_dirichlet(const Graph& g, std::span<const Vertex> component,
                                         std::span<const std::pair<Vertex, double>> pinned,
                                         std::span<const double> source, const SolverOptions& options) {
  const auto sys = detail::build_reduced(g, component, pinned, source);
  DirichletSolution out;
  out.values.assign(g.vertex_count(), 0.0);
  for (auto [v, value] : pinned) out.values[v] = value;
  if (sys.size() == 0) return out;

  std::vector<double> x;
  if (component.size() < options.dense_limit) {
    x = detail::dense_solve(sys);
    out.dense = true;
  } else {
    x = detail::cg_solve(sys, options.tolerance, options.iteration_factor * component.size(), out.iterations);
  }
  out.residual = sys.relative_residual(x);
  if (!(out.residual <= options.tolerance)) throw ConvergenceError(out.residual, out.iterations);
  for (std::size_t i = 0; i < sys.size(); ++i) out.values[sys.free[i]] = x[i];
  return out;
}

// Sparse LDL^T factorization of the Laplacian of a connected graph with one
// vertex grounded. Each pairwise resistance is then one pair of triangular
// solves, which is what makes many-pair queries on large clusters cheap.
class GroundedLaplacian {
 public:
  explicit GroundedLaplacian(const Graph& g, Vertex ground = 0) : n_(g.vertex_count()), ground_(ground) {
    if (!is_connected(g)) throw ParameterError("grounded factorization requires a connected graph");
    check_vertex(g, ground);
    std::vector<Eigen::Triplet<double>> entries;
    for (Vertex v = 0; v < n_; ++v) {
      if (v == ground_) continue;
      entries.emplace_back(index(v), index(v), g.weighted_degree(v));
      for (const auto& nb : g.neighbors(v)) {
        if (nb.vertex != ground_) entries.emplace_back(index(v), index(nb.vertex), -static_cast<double>(nb.multiplicity));
      }
    }
    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(n_ - 1), static_cast<Eigen::Index>(n_ - 1));
    a.setFromTriplets(entries.begin(), entries.end());
    solver_.compute(a);
    if (solver_.info() != Eigen::Success) throw InternalError("grounded Laplacian factorization failed");
  }

  // Effective resistance between a and b.
  double resistance(Vertex a, Vertex b) const {
    if (a == b) return 0.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_ - 1));
    if (a != ground_) rhs(index(a)) += 1.0;
    if (b != ground_) rhs(index(b)) -= 1.0;
    const Eigen::VectorXd x = solver_.solve(rhs);
    const double xa = a == ground_ ? 0.0 : x(index(a));
    const double xb = b == ground_ ? 0.0 : x(index(b));
    return xa - xb;
  }

 private:
  Eigen::Index index(Vertex v) const { return static_cast<Eigen::Index>(v < ground_ ? v : v - 1); }

  std::size_t n_;
  Vertex ground_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

// All pairwise resistances of a connected graph from the dense inverse of the
// grounded Laplacian. Intended for a few hundred vertices.
inline Eigen::MatrixXd resistance_matrix(const Graph& g) {
  if (!is_connected(g)) throw ParameterError("resistance matrix requires a connected graph");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n - 1, n - 1);
    for (const auto& e : g.edges()) {
      const double c = e.multiplicity;
      const Eigen::Index i = static_cast<Eigen::Index>(e.u) - 1, j = static_cast<Eigen::Index>(e.v) - 1;
      if (i >= 0) a(i, i) += c;
      if (j >= 0) a(j, j) += c;
      if (i >= 0 && j >= 0) {
        a(i, j) -= c;
        a(j, i) -= c;
      }
    }
    inv.bottomRightCorner(n - 1, n - 1) = a.llt().solve(Eigen::MatrixXd::Identity(n - 1, n - 1));
  }
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = inv(i, i) + inv(j, j) - 2.0 * inv(i, j);
  return r;
}

}  // namespace isores
