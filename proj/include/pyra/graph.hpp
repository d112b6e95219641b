#pragma once

#include "pyra/common.hpp"
#include "pyra/errors.hpp"
#include "pyra/sparse.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace pyra {

// Undirected edge, normalized to i < j on construction.
struct Edge {
  Index i;
  Index j;
  double w;
};

// Weighted undirected loopless graph. Immutable after construction.
class Graph {
public:
  Graph() = default;

  // Validates the edge list: rejects self-loops, nonpositive weights,
  // out-of-range endpoints and duplicate undirected pairs.
  Graph(Index n, std::vector<Edge> edges);

  Index num_vertices() const { return n_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }

  // Sorted by (i, j), each with i < j.
  const std::vector<Edge>& edges() const { return edges_; }

  // Both triangles stored; rows give full neighborhoods.
  const CsrMatrix& adjacency() const { return adjacency_; }

  // Weighted degree vector.
  Vector degrees() const;
  double max_degree() const;

  double weight(Index i, Index j) const { return adjacency_.coeff(i, j); }

  // Optional 2-d embedding, used by geometric signals and drawings.
  bool has_coordinates() const { return !coords_.empty(); }
  const std::vector<std::array<double, 2>>& coordinates() const { return coords_; }
  void set_coordinates(std::vector<std::array<double, 2>> coords);

private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  CsrMatrix adjacency_;
  std::vector<std::array<double, 2>> coords_;
};

enum class LaplacianKind { combinatorial, normalized, regularized };

// Sparse symmetric Laplacian matrix; diagonal entries are part of the stored
// pattern.
struct Laplacian {
  LaplacianKind kind = LaplacianKind::combinatorial;
  double epsilon = 0.0; // regularized kind only
  double max_degree = 0.0; // largest diagonal entry of the combinatorial part
  CsrMatrix matrix;

  Index n() const { return matrix.rows(); }
  Vector apply(const Vector& x) const { return matrix.multiply(x); }
};

Laplacian laplacian(const Graph& g, LaplacianKind kind = LaplacianKind::combinatorial,
                    double epsilon = 0.0);

// combinatorial L plus epsilon on the diagonal
Laplacian regularize(const Laplacian& L, double epsilon);

bool is_connected(const Graph& g);

// BFS 2-coloring; empty when the graph is not bipartite. Colors are 0/1 with
// vertex 0 (or the lowest vertex of each component) colored 0.
std::optional<std::vector<int>> two_coloring(const Graph& g);

// ---- generators (unit weights unless stated) ----

Graph path_graph(Index n);
Graph ring_graph(Index n); // n >= 3
// wrap joins opposite borders; wrapped dimensions must have length >= 3
Graph grid_graph(Index rows, Index cols, bool wrap);
// complete b-ary tree with `depth` edge levels; branching >= 2, depth >= 1
Graph balanced_tree_graph(Index branching, Index depth);
// connected k-regular bipartite graph on n vertices (n even, 1 <= k <= n/2)
Graph k_regular_bipartite_graph(Index k, Index n, std::uint64_t seed);
// n points uniform in the unit square; vertices within `radius` joined with
// weight exp(-d^2 / (2 sigma^2)), sigma = radius / 2. The radius grows by
// 1.25x (same points) until the graph is connected.
Graph random_geometric_graph(Index n, double radius, std::uint64_t seed);
Graph complete_graph(Index n);

} // namespace pyra
