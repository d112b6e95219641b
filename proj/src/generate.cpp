#include "pyra/graph.hpp"
#include "pyra/rng.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace pyra {

Graph path_graph(Index n) {
  if (n < 2) throw InvalidFamilyParametersError("path needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  Graph g(n, std::move(edges));
  std::vector<std::array<double, 2>> coords(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    coords[static_cast<std::size_t>(i)] = {static_cast<double>(i) / static_cast<double>(n - 1), 0.5};
  g.set_coordinates(std::move(coords));
  return g;
}

Graph ring_graph(Index n) {
  if (n < 3) throw InvalidFamilyParametersError("ring needs n >= 3");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  Graph g(n, std::move(edges));
  std::vector<std::array<double, 2>> coords(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    coords[static_cast<std::size_t>(i)] = {0.5 + 0.45 * std::cos(t), 0.5 + 0.45 * std::sin(t)};
  }
  g.set_coordinates(std::move(coords));
  return g;
}

Graph grid_graph(Index rows, Index cols, bool wrap) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw InvalidFamilyParametersError("grid needs at least 2 vertices");
  if (wrap && (rows < 3 || cols < 3))
    throw InvalidFamilyParametersError("wrapped grid needs both dimensions >= 3");
  const auto id = [cols](Index r, Index c) { return r * cols + c; };
  std::vector<Edge> edges;
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
      if (wrap && c == cols - 1) edges.push_back({id(r, 0), id(r, c), 1.0});
      if (wrap && r == rows - 1) edges.push_back({id(0, c), id(r, c), 1.0});
    }
  Graph g(rows * cols, std::move(edges));
  std::vector<std::array<double, 2>> coords(static_cast<std::size_t>(rows * cols));
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      coords[static_cast<std::size_t>(id(r, c))] = {
          cols > 1 ? static_cast<double>(c) / static_cast<double>(cols - 1) : 0.5,
          rows > 1 ? static_cast<double>(r) / static_cast<double>(rows - 1) : 0.5};
  g.set_coordinates(std::move(coords));
  return g;
}

Graph balanced_tree_graph(Index branching, Index depth) {
  if (branching < 2 || depth < 1)
    throw InvalidFamilyParametersError("balanced tree needs branching >= 2 and depth >= 1");
  Index n = 1;
  Index level = 1;
  for (Index d = 0; d < depth; ++d) {
    level *= branching;
    n += level;
    if (n > 2'000'000) throw InvalidFamilyParametersError("balanced tree too large");
  }
  // array layout: children of v are branching*v + 1 .. branching*v + branching
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (Index v = 1; v < n; ++v) edges.push_back({(v - 1) / branching, v, 1.0});
  return Graph(n, std::move(edges));
}

namespace {

Graph bipartite_from_offsets(Index k, Index m) {
  // side A = 0..m-1, side B = m..2m-1; edges a -- B[(a + t) mod m]
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(k * m));
  for (Index a = 0; a < m; ++a)
    for (Index t = 0; t < k; ++t) edges.push_back({a, m + (a + t) % m, 1.0});
  return Graph(2 * m, std::move(edges));
}

} // namespace

Graph k_regular_bipartite_graph(Index k, Index n, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw InvalidFamilyParametersError("k-regular bipartite needs even n >= 2");
  const Index m = n / 2;
  if (k < 1 || k > m) throw InvalidFamilyParametersError("need 1 <= k <= n/2");
  if (k == 1 && m > 1)
    throw InvalidFamilyParametersError("a perfect matching on more than 2 vertices is disconnected");
  if (k == m) return bipartite_from_offsets(k, m); // complete bipartite

  // union of k random perfect matchings; reject draws with duplicate edges or
  // a disconnected result
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::set<std::pair<Index, Index>> used;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(k * m));
    bool clash = false;
    for (Index t = 0; t < k && !clash; ++t) {
      const std::vector<Index> perm = rng.permutation(m);
      for (Index a = 0; a < m; ++a) {
        const Index b = m + perm[static_cast<std::size_t>(a)];
        if (!used.insert({a, b}).second) {
          clash = true;
          break;
        }
        edges.push_back({a, b, 1.0});
      }
    }
    if (clash) continue;
    Graph g(n, std::move(edges));
    if (is_connected(g)) return g;
  }
  return bipartite_from_offsets(k, m); // deterministic connected fallback
}

Graph random_geometric_graph(Index n, double radius, std::uint64_t seed) {
  if (n < 2 || !(radius > 0.0))
    throw InvalidFamilyParametersError("random geometric needs n >= 2 and radius > 0");
  Rng rng(seed);
  std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) p = {rng.uniform01(), rng.uniform01()};

  double r = radius;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const double sigma = r / 2.0;
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        const double dx = pts[static_cast<std::size_t>(i)][0] - pts[static_cast<std::size_t>(j)][0];
        const double dy = pts[static_cast<std::size_t>(i)][1] - pts[static_cast<std::size_t>(j)][1];
        const double d2 = dx * dx + dy * dy;
        if (d2 <= r * r) edges.push_back({i, j, std::exp(-d2 / (2.0 * sigma * sigma))});
      }
    Graph g(n, std::move(edges));
    if (is_connected(g)) {
      g.set_coordinates(pts);
      return g;
    }
    r *= 1.25;
  }
  throw DisconnectedAfterRetriesError("geometric graph still disconnected after radius growth");
}

Graph complete_graph(Index n) {
  if (n < 2) throw InvalidFamilyParametersError("complete graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

} // namespace pyra
