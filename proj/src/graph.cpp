#include "pyra/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

namespace pyra {

Graph::Graph(Index n, std::vector<Edge> edges) : n_(n) {
  if (n <= 0) throw InvalidInputError("vertex count must be positive");
  for (Edge& e : edges) {
    if (e.i == e.j) throw SelfLoopError("self-loop on vertex " + std::to_string(e.i));
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw IndexOutOfRangeError("edge endpoint out of range");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw NonPositiveWeightError("edge weight must be a positive finite real");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges.size(); ++k)
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j)
      throw DuplicateEdgeError("duplicate edge (" + std::to_string(edges[k].i) + ", " +
                               std::to_string(edges[k].j) + ")");
  edges_ = std::move(edges);

  std::vector<Triplet> triplets;
  triplets.reserve(2 * edges_.size());
  for (const Edge& e : edges_) {
    triplets.push_back({e.i, e.j, e.w});
    triplets.push_back({e.j, e.i, e.w});
  }
  adjacency_ = CsrMatrix::from_triplets(n_, n_, std::move(triplets));
}

Vector Graph::degrees() const {
  Vector d = Vector::Zero(n_);
  for (const Edge& e : edges_) {
    d[e.i] += e.w;
    d[e.j] += e.w;
  }
  return d;
}

double Graph::max_degree() const {
  const Vector d = degrees();
  return d.size() > 0 ? d.maxCoeff() : 0.0;
}

void Graph::set_coordinates(std::vector<std::array<double, 2>> coords) {
  if (static_cast<Index>(coords.size()) != n_)
    throw DimensionMismatchError("coordinate count must equal vertex count");
  coords_ = std::move(coords);
}

Laplacian laplacian(const Graph& g, LaplacianKind kind, double epsilon) {
  const Index n = g.num_vertices();
  const Vector d = g.degrees();
  std::vector<Triplet> triplets;
  triplets.reserve(2 * g.edges().size() + static_cast<std::size_t>(n));

  Laplacian L;
  L.kind = kind;
  L.max_degree = d.size() > 0 ? d.maxCoeff() : 0.0;

  switch (kind) {
    case LaplacianKind::combinatorial:
      for (Index i = 0; i < n; ++i) triplets.push_back({i, i, d[i]});
      for (const Edge& e : g.edges()) {
        triplets.push_back({e.i, e.j, -e.w});
        triplets.push_back({e.j, e.i, -e.w});
      }
      break;
    case LaplacianKind::normalized:
      for (Index i = 0; i < n; ++i) triplets.push_back({i, i, d[i] > 0.0 ? 1.0 : 0.0});
      for (const Edge& e : g.edges()) {
        const double v = -e.w / std::sqrt(d[e.i] * d[e.j]);
        triplets.push_back({e.i, e.j, v});
        triplets.push_back({e.j, e.i, v});
      }
      break;
    case LaplacianKind::regularized:
      if (!(epsilon > 0.0)) throw InvalidInputError("regularization requires epsilon > 0");
      L.epsilon = epsilon;
      for (Index i = 0; i < n; ++i) triplets.push_back({i, i, d[i] + epsilon});
      for (const Edge& e : g.edges()) {
        triplets.push_back({e.i, e.j, -e.w});
        triplets.push_back({e.j, e.i, -e.w});
      }
      break;
  }
  L.matrix = CsrMatrix::from_triplets(n, n, std::move(triplets));
  return L;
}

Laplacian regularize(const Laplacian& L, double epsilon) {
  if (L.kind != LaplacianKind::combinatorial)
    throw InvalidInputError("can only regularize a combinatorial Laplacian");
  if (!(epsilon > 0.0)) throw InvalidInputError("regularization requires epsilon > 0");
  const Index n = L.n();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(L.matrix.nnz()) + static_cast<std::size_t>(n));
  for (Index r = 0; r < n; ++r)
    for (Index k = L.matrix.row_ptr()[static_cast<std::size_t>(r)];
         k < L.matrix.row_ptr()[static_cast<std::size_t>(r) + 1]; ++k)
      triplets.push_back({r, L.matrix.col_idx()[static_cast<std::size_t>(k)],
                          L.matrix.values()[static_cast<std::size_t>(k)]});
  for (Index i = 0; i < n; ++i) triplets.push_back({i, i, epsilon});

  Laplacian out;
  out.kind = LaplacianKind::regularized;
  out.epsilon = epsilon;
  out.max_degree = L.max_degree;
  out.matrix = CsrMatrix::from_triplets(n, n, std::move(triplets));
  return out;
}

bool is_connected(const Graph& g) {
  const Index n = g.num_vertices();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<Index> queue{0};
  seen[0] = 1;
  Index count = 1;
  const CsrMatrix& a = g.adjacency();
  while (!queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    for (Index k = a.row_ptr()[static_cast<std::size_t>(v)];
         k < a.row_ptr()[static_cast<std::size_t>(v) + 1]; ++k) {
      const Index u = a.col_idx()[static_cast<std::size_t>(k)];
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        queue.push_back(u);
      }
    }
  }
  return count == n;
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
  const Index n = g.num_vertices();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  const CsrMatrix& a = g.adjacency();
  for (Index start = 0; start < n; ++start) {
    if (color[static_cast<std::size_t>(start)] >= 0) continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::deque<Index> queue{start};
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      for (Index k = a.row_ptr()[static_cast<std::size_t>(v)];
           k < a.row_ptr()[static_cast<std::size_t>(v) + 1]; ++k) {
        const Index u = a.col_idx()[static_cast<std::size_t>(k)];
        if (color[static_cast<std::size_t>(u)] < 0) {
          color[static_cast<std::size_t>(u)] = 1 - color[static_cast<std::size_t>(v)];
          queue.push_back(u);
        } else if (color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

} // namespace pyra
