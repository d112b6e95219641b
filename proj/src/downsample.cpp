#include "pyra/downsample.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace pyra {

namespace {

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }
  Index find(Index v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

VertexMask median_split(const Vector& v) {
  const Index n = v.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return v[a] != v[b] ? v[a] > v[b] : a < b;
  });
  const Index keep_count = (n + 1) / 2;
  std::vector<Index> kept(order.begin(), order.begin() + keep_count);
  std::sort(kept.begin(), kept.end());
  return VertexMask::from_kept(n, kept);
}

} // namespace

VertexMask select_largest_eigenvector(const Laplacian& L, std::uint64_t seed,
                                      PowerMethodOptions opts) {
  const Index n = L.n();
  if (n < 3) throw InvalidInputError("vertex selection needs at least 3 vertices");
  const PowerMethodResult pm = power_method(L, seed, opts);
  const Vector u = canonical_sign(pm.vector);
  if (pm.converged) {
    std::vector<char> keep(static_cast<std::size_t>(n), 0);
    Index kept_count = 0;
    for (Index i = 0; i < n; ++i)
      if (u[i] >= 0.0) {
        keep[static_cast<std::size_t>(i)] = 1;
        ++kept_count;
      }
    if (kept_count >= 1 && kept_count < n) return VertexMask(std::move(keep));
  }
  return median_split(u);
}

std::pair<Index, Index> count_strong_nodal_domains(const Vector& f, const Graph& g) {
  const Index n = g.num_vertices();
  if (f.size() != n) throw DimensionMismatchError("signal/graph size mismatch");
  UnionFind uf(n);
  for (const Edge& e : g.edges()) {
    const bool both_pos = f[e.i] > 0.0 && f[e.j] > 0.0;
    const bool both_neg = f[e.i] < 0.0 && f[e.j] < 0.0;
    if (both_pos || both_neg) uf.unite(e.i, e.j);
  }
  std::vector<char> counted(static_cast<std::size_t>(n), 0);
  Index positive = 0;
  Index negative = 0;
  for (Index i = 0; i < n; ++i) {
    if (f[i] == 0.0) continue;
    const Index root = uf.find(i);
    if (counted[static_cast<std::size_t>(root)]) continue;
    counted[static_cast<std::size_t>(root)] = 1;
    (f[i] > 0.0 ? positive : negative) += 1;
  }
  return {positive, negative};
}

bool is_bipartition_split(const VertexMask& mask, const Graph& g) {
  if (mask.size() != g.num_vertices()) throw DimensionMismatchError("mask/graph size mismatch");
  if (!two_coloring(g)) throw NotBipartiteError("graph is not bipartite");
  for (const Edge& e : g.edges())
    if (mask.keep(e.i) == mask.keep(e.j)) return false;
  return true;
}

} // namespace pyra
