#include "pyra/reduce.hpp"

#include "pyra/rng.hpp"
#include "pyra/sparse.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace pyra {

namespace {

constexpr Index kDenseSolveLimit = 200; // eliminated-block size for the dense path
constexpr Index kDenseResistanceLimit = 2000;

// Solve C Z = Rhs for SPD sparse C, column by column.
Matrix solve_spd(const CsrMatrix& C, const Matrix& rhs) {
  const Index ne = C.rows();
  if (ne < kDenseSolveLimit) {
    Eigen::LLT<Matrix> llt(C.to_dense());
    if (llt.info() != Eigen::Success)
      throw SolverFailureError("eliminated block is not positive definite");
    return llt.solve(rhs);
  }
  Vector inv_diag = C.diagonal();
  for (Index i = 0; i < ne; ++i) {
    if (!(inv_diag[i] > 0.0)) throw SolverFailureError("eliminated block has a zero diagonal");
    inv_diag[i] = 1.0 / inv_diag[i];
  }
  Matrix z = Matrix::Zero(ne, rhs.cols());
  for (Index c = 0; c < rhs.cols(); ++c) {
    Vector x = Vector::Zero(ne);
    const Vector b = rhs.col(c);
    const CgResult r = pcg([&](const Vector& v) { return C.multiply(v); }, b, x, inv_diag);
    if (!r.converged)
      throw SolverFailureError("CG stalled on the eliminated block (relative residual " +
                               std::to_string(r.relative_residual) + ")");
    z.col(c) = x;
  }
  return z;
}

} // namespace

Laplacian kron_reduce(const Laplacian& L, const VertexMask& mask) {
  if (L.kind != LaplacianKind::combinatorial)
    throw InvalidInputError("Kron reduction expects a combinatorial Laplacian");
  if (mask.size() != L.n()) throw DimensionMismatchError("mask/Laplacian size mismatch");
  const std::vector<Index>& kept = mask.kept();
  const std::vector<Index>& elim = mask.eliminated();
  if (static_cast<Index>(kept.size()) < 2)
    throw MaskTooSmallError("Kron reduction needs at least 2 kept vertices");
  if (elim.empty()) throw InvalidInputError("Kron reduction needs at least 1 eliminated vertex");

  const CsrMatrix A = L.matrix.principal_submatrix(kept);
  const CsrMatrix B = L.matrix.block(kept, elim);
  const CsrMatrix C = L.matrix.principal_submatrix(elim);

  const Matrix b_dense = B.to_dense();
  const Matrix z = solve_spd(C, b_dense.transpose());
  Matrix s = A.to_dense() - b_dense * z;
  s = 0.5 * (s + s.transpose()).eval();

  const Index nk = static_cast<Index>(kept.size());
  const double d_max = std::max(L.max_degree, 0.0);
  const double clamp_tol = 1e-12 * d_max;
  const double positive_tol = 1e-9 * std::max(1.0, d_max);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(s.size()));
  double out_max_degree = 0.0;
  for (Index i = 0; i < nk; ++i) {
    double degree = 0.0;
    for (Index j = 0; j < nk; ++j) {
      if (j == i) continue;
      double v = s(i, j);
      if (std::abs(v) < clamp_tol) continue;
      if (v > 0.0) {
        if (v <= positive_tol) continue;
        throw SolverFailureError("Schur complement has a positive off-diagonal beyond tolerance");
      }
      triplets.push_back({i, j, v});
      degree += -v; // ascending-j accumulation, matching degree computation
    }
    triplets.push_back({i, i, degree});
    out_max_degree = std::max(out_max_degree, degree);
  }

  Laplacian out;
  out.kind = LaplacianKind::combinatorial;
  out.max_degree = out_max_degree;
  out.matrix = CsrMatrix::from_triplets(nk, nk, std::move(triplets));
  return out;
}

Graph graph_from_laplacian(const Laplacian& L) {
  if (L.kind != LaplacianKind::combinatorial)
    throw NotALaplacianError("only a combinatorial Laplacian maps back to a graph");
  const Index n = L.n();
  const double scale = std::max(1.0, L.max_degree);
  const CsrMatrix& m = L.matrix;

  std::vector<Edge> edges;
  for (Index r = 0; r < n; ++r) {
    double row_sum = 0.0;
    for (Index k = m.row_ptr()[static_cast<std::size_t>(r)];
         k < m.row_ptr()[static_cast<std::size_t>(r) + 1]; ++k) {
      const Index c = m.col_idx()[static_cast<std::size_t>(k)];
      const double v = m.values()[static_cast<std::size_t>(k)];
      row_sum += v;
      if (c == r) continue;
      if (v > 1e-9 * scale) throw NotALaplacianError("positive off-diagonal entry");
      if (std::abs(v - m.coeff(c, r)) > 1e-12 * scale)
        throw NotALaplacianError("matrix is not symmetric");
      if (c > r && v < 0.0) edges.push_back({r, c, -v});
    }
    if (std::abs(row_sum) > 1e-8 * scale) throw NotALaplacianError("row sum is not zero");
  }
  return Graph(n, std::move(edges));
}

double effective_resistance(const Laplacian& L, Index i, Index j) {
  if (L.kind != LaplacianKind::combinatorial)
    throw InvalidInputError("effective resistance expects a combinatorial Laplacian");
  const Index n = L.n();
  if (i < 0 || i >= n || j < 0 || j >= n) throw IndexOutOfRangeError("vertex out of range");
  if (i == j) throw InvalidInputError("effective resistance needs two distinct vertices");

  Vector b = Vector::Zero(n);
  b[i] = 1.0;
  b[j] = -1.0;
  // L plus the rank-one 1/n * ones keeps b's solution in the range of L^+
  const double inv_n = 1.0 / static_cast<double>(n);
  auto apply = [&](const Vector& x) {
    Vector y = L.apply(x);
    y.array() += inv_n * x.sum();
    return y;
  };
  Vector inv_diag = L.matrix.diagonal();
  for (Index k = 0; k < n; ++k) inv_diag[k] = 1.0 / (inv_diag[k] + inv_n);
  Vector x = Vector::Zero(n);
  const CgResult r = pcg(apply, b, x, inv_diag);
  if (!r.converged) throw SolverFailureError("resistance solve did not converge");
  return b.dot(x);
}

std::vector<double> pair_effective_resistances(const Laplacian& L,
                                               const std::vector<Edge>& pairs) {
  const Index n = L.n();
  std::vector<double> out(pairs.size());
  if (n <= kDenseResistanceLimit) {
    Matrix a = L.matrix.to_dense();
    a.array() += 1.0 / static_cast<double>(n);
    Eigen::LLT<Matrix> llt(a);
    if (llt.info() != Eigen::Success)
      throw SolverFailureError("augmented Laplacian is not positive definite");
    const Matrix inv = llt.solve(Matrix::Identity(n, n));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Index i = pairs[k].i;
      const Index j = pairs[k].j;
      out[k] = inv(i, i) + inv(j, j) - 2.0 * inv(i, j);
    }
    return out;
  }
  for (std::size_t k = 0; k < pairs.size(); ++k)
    out[k] = effective_resistance(L, pairs[k].i, pairs[k].j);
  return out;
}

std::vector<double> edge_sampling_probabilities(const Graph& g) {
  const Laplacian L = laplacian(g);
  const std::vector<double> resistances = pair_effective_resistances(L, g.edges());
  std::vector<double> p(resistances.size());
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = resistances[k] * g.edges()[k].w;
    total += p[k];
  }
  if (!(total > 0.0)) throw SolverFailureError("degenerate edge sampling distribution");
  for (double& v : p) v /= total;
  return p;
}

Index resolve_sample_count(const SparsifyConfig& cfg, Index n) {
  if (cfg.rule == SparsifyConfig::QRule::explicit_count) {
    if (cfg.q < 1) throw InvalidInputError("sample count must be >= 1");
    return cfg.q;
  }
  if (!(cfg.c > 0.0)) throw InvalidInputError("sample scale must be positive");
  const double q = cfg.c * static_cast<double>(n) * std::log(static_cast<double>(n));
  return std::max<Index>(1, static_cast<Index>(std::llround(q)));
}

SparsifyResult spectral_sparsify(const Graph& g, const SparsifyConfig& cfg) {
  if (!is_connected(g)) throw InvalidInputError("sparsification needs a connected graph");
  const std::vector<Edge>& edges = g.edges();
  const Index q_total = resolve_sample_count(cfg, g.num_vertices());
  const std::vector<double> p = edge_sampling_probabilities(g);

  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  cdf.back() = 1.0;

  Rng rng(cfg.seed);
  // tally draws per edge, then scale once: w * count / (Q p) keeps the
  // always-sampled edge (p = 1) bit-exact instead of drifting over Q adds
  std::vector<Index> hits(edges.size(), 0);
  for (Index draw = 0; draw < q_total; ++draw) {
    const double u = rng.uniform01();
    const std::size_t k = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    hits[k] += 1;
  }

  std::vector<Edge> sampled;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (hits[k] > 0)
      sampled.push_back({edges[k].i, edges[k].j,
                         edges[k].w * (static_cast<double>(hits[k]) /
                                       (static_cast<double>(q_total) * p[k]))});

  SparsifyResult result;
  {
    Graph candidate(g.num_vertices(), sampled);
    if (is_connected(candidate)) {
      if (g.has_coordinates()) candidate.set_coordinates(g.coordinates());
      result.graph = std::move(candidate);
      return result;
    }
  }

  // maximum-weight spanning forest across components, from original edges
  std::vector<Index> comp_parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(comp_parent.begin(), comp_parent.end(), Index{0});
  auto find = [&](Index v) {
    while (comp_parent[static_cast<std::size_t>(v)] != v) {
      comp_parent[static_cast<std::size_t>(v)] =
          comp_parent[static_cast<std::size_t>(comp_parent[static_cast<std::size_t>(v)])];
      v = comp_parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const Edge& e : sampled) {
    const Index a = find(e.i);
    const Index b = find(e.j);
    if (a != b) comp_parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a].w != edges[b].w) return edges[a].w > edges[b].w;
    return edges[a].i != edges[b].i ? edges[a].i < edges[b].i : edges[a].j < edges[b].j;
  });
  for (std::size_t k : order) {
    const Index a = find(edges[k].i);
    const Index b = find(edges[k].j);
    if (a == b) continue;
    comp_parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    sampled.push_back(edges[k]);
  }

  Graph repaired_graph(g.num_vertices(), std::move(sampled));
  if (g.has_coordinates()) repaired_graph.set_coordinates(g.coordinates());
  result.graph = std::move(repaired_graph);
  result.repaired = true;
  return result;
}

ReduceResult reduce_pipeline(const Laplacian& L, const VertexMask& mask,
                             const SparsifyConfig& cfg, bool sparsify) {
  ReduceResult out;
  out.laplacian = kron_reduce(L, mask);
  if (sparsify) {
    const Graph reduced = graph_from_laplacian(out.laplacian);
    SparsifyResult sr = spectral_sparsify(reduced, cfg);
    out.laplacian = laplacian(sr.graph);
    out.sparsified = true;
    out.repaired = sr.repaired;
  }
  return out;
}

} // namespace pyra
