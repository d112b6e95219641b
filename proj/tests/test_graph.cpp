#include "doctest.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "pyra/graph.hpp"
#include "support/oracles.hpp"

using namespace pyra;

namespace {

bool degrees_all(const Graph& g, double d) {
  Vector deg = g.degrees();
  for (Index i = 0; i < deg.size(); ++i)
    if (std::abs(deg[i] - d) > 1e-12) return false;
  return true;
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("edge validation") {
  CHECK_THROWS_AS(Graph(3, {{0, 0, 1.0}}), SelfLoopError);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 0.0}}), NonPositiveWeightError);
  CHECK_THROWS_AS(Graph(3, {{0, 1, -2.0}}), NonPositiveWeightError);
  CHECK_THROWS_AS(Graph(3, {{0, 3, 1.0}}), IndexOutOfRangeError);
  CHECK_THROWS_AS(Graph(3, {{-1, 2, 1.0}}), IndexOutOfRangeError);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), DuplicateEdgeError);
  double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Graph(3, {{0, 1, inf}}), NonPositiveWeightError);
}

TEST_CASE("edges are normalized and sorted") {
  Graph g(4, {{3, 1, 2.0}, {2, 0, 1.0}, {1, 0, 4.0}});
  auto& es = g.edges();
  REQUIRE(es.size() == 3);
  CHECK(es[0].i == 0); CHECK(es[0].j == 1); CHECK(es[0].w == 4.0);
  CHECK(es[1].i == 0); CHECK(es[1].j == 2);
  CHECK(es[2].i == 1); CHECK(es[2].j == 3);
  CHECK(g.weight(1, 3) == 2.0);
  CHECK(g.weight(3, 1) == 2.0);
  CHECK(g.weight(0, 3) == 0.0);
}

TEST_CASE("degrees match dense row sums") {
  Graph g = random_geometric_graph(40, 0.3, 5);
  Matrix W = Matrix::Zero(40, 40);
  for (const auto& e : g.edges()) {
    W(e.i, e.j) = e.w;
    W(e.j, e.i) = e.w;
  }
  Vector want = W.rowwise().sum();
  Vector got = g.degrees();
  CHECK((got - want).norm() <= 1e-13 * (1.0 + want.norm()));
  CHECK(g.max_degree() == doctest::Approx(want.maxCoeff()));
}

TEST_CASE("laplacian kinds agree with dense assembly") {
  Graph g = random_geometric_graph(30, 0.35, 9);
  for (auto kind : {LaplacianKind::combinatorial, LaplacianKind::normalized}) {
    Matrix got = laplacian(g, kind).matrix.to_dense();
    Matrix want = oracle::dense_laplacian(g, kind);
    CHECK((got - want).norm() <= 1e-12 * (1.0 + want.norm()));
  }
  Matrix got = laplacian(g, LaplacianKind::regularized, 0.7).matrix.to_dense();
  Matrix want = oracle::dense_laplacian(g, LaplacianKind::regularized, 0.7);
  CHECK((got - want).norm() <= 1e-12 * (1.0 + want.norm()));
  CHECK_THROWS_AS(laplacian(g, LaplacianKind::regularized, 0.0), InvalidInputError);
}

TEST_CASE("regularize shifts the diagonal") {
  Graph g = path_graph(6);
  auto L = laplacian(g);
  auto Lr = regularize(L, 0.25);
  CHECK(Lr.kind == LaplacianKind::regularized);
  CHECK(Lr.epsilon == 0.25);
  Matrix diff = Lr.matrix.to_dense() - L.matrix.to_dense();
  CHECK((diff - 0.25 * Matrix::Identity(6, 6)).norm() <= 1e-14);
}

TEST_CASE("normalized spectrum lies in [0, 2]") {
  for (auto g : {path_graph(12), ring_graph(9), complete_graph(7),
                 random_geometric_graph(25, 0.4, 2)}) {
    Matrix Ln = oracle::dense_laplacian(g, LaplacianKind::normalized);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Ln);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK(es.eigenvalues().maxCoeff() <= 2.0 + 1e-10);
  }
}

TEST_CASE("two_coloring on bipartite and non-bipartite graphs") {
  auto c = two_coloring(path_graph(7));
  REQUIRE(c.has_value());
  for (Index i = 0; i < 7; ++i) CHECK((*c)[i] == i % 2);
  CHECK(two_coloring(ring_graph(8)).has_value());
  CHECK_FALSE(two_coloring(ring_graph(5)).has_value());
  CHECK_FALSE(two_coloring(complete_graph(3)).has_value());
  CHECK(two_coloring(grid_graph(3, 4, false)).has_value());
  CHECK(two_coloring(balanced_tree_graph(2, 3)).has_value());
}

TEST_CASE("is_connected") {
  CHECK(is_connected(path_graph(5)));
  Graph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_FALSE(is_connected(split));
  CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("path, ring, grid, tree, complete shapes") {
  Graph p = path_graph(6);
  CHECK(p.num_edges() == 5);
  CHECK(p.has_coordinates());

  Graph r = ring_graph(6);
  CHECK(r.num_edges() == 6);
  CHECK(degrees_all(r, 2.0));
  CHECK_THROWS_AS(ring_graph(2), InvalidFamilyParametersError);

  Graph gr = grid_graph(3, 5, false);
  CHECK(gr.num_vertices() == 15);
  CHECK(gr.num_edges() == 3 * 4 + 5 * 2);
  Graph torus = grid_graph(3, 4, true);
  CHECK(degrees_all(torus, 4.0));
  CHECK_THROWS_AS(grid_graph(2, 4, true), InvalidFamilyParametersError);

  Graph t = balanced_tree_graph(3, 2);
  CHECK(t.num_vertices() == 1 + 3 + 9);
  CHECK(t.num_edges() == t.num_vertices() - 1);
  CHECK(is_connected(t));
  CHECK_THROWS_AS(balanced_tree_graph(1, 2), InvalidFamilyParametersError);

  Graph k = complete_graph(5);
  CHECK(k.num_edges() == 10);
  CHECK(degrees_all(k, 4.0));
}

TEST_CASE("k-regular bipartite generator") {
  for (auto [k, n] : std::vector<std::pair<Index, Index>>{
           {2, 8}, {3, 12}, {4, 10}, {5, 10}, {3, 6}}) {
    for (std::uint64_t seed : {0ULL, 1ULL, 17ULL}) {
      Graph g = k_regular_bipartite_graph(k, n, seed);
      CHECK(g.num_vertices() == n);
      CHECK(degrees_all(g, static_cast<double>(k)));
      CHECK(is_connected(g));
      auto coloring = two_coloring(g);
      REQUIRE(coloring.has_value());
      // the halves {0..n/2-1} and {n/2..n-1} are the two sides
      for (const auto& e : g.edges())
        CHECK(((e.i < n / 2) != (e.j < n / 2)));
    }
  }
  CHECK_THROWS_AS(k_regular_bipartite_graph(0, 8, 0), InvalidFamilyParametersError);
  CHECK_THROWS_AS(k_regular_bipartite_graph(5, 8, 0), InvalidFamilyParametersError);
  CHECK_THROWS_AS(k_regular_bipartite_graph(2, 7, 0), InvalidFamilyParametersError);
}

TEST_CASE("k-regular bipartite generator is deterministic in the seed") {
  Graph a = k_regular_bipartite_graph(3, 14, 42);
  Graph b = k_regular_bipartite_graph(3, 14, 42);
  REQUIRE(a.num_edges() == b.num_edges());
  for (Index e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edges()[e].i == b.edges()[e].i);
    CHECK(a.edges()[e].j == b.edges()[e].j);
  }
}

TEST_CASE("geometric graph: connectivity, weights, determinism") {
  Graph g = random_geometric_graph(50, 0.25, 123);
  CHECK(is_connected(g));
  REQUIRE(g.has_coordinates());
  const auto& xy = g.coordinates();
  for (const auto& p : xy) {
    CHECK(p[0] >= 0.0); CHECK(p[0] <= 1.0);
    CHECK(p[1] >= 0.0); CHECK(p[1] <= 1.0);
  }
  // weights follow the Gaussian of the distance for some effective radius
  double max_d = 0.0;
  for (const auto& e : g.edges()) {
    double dx = xy[e.i][0] - xy[e.j][0], dy = xy[e.i][1] - xy[e.j][1];
    max_d = std::max(max_d, std::hypot(dx, dy));
  }
  bool weight_formula_holds = false;
  double radius = 0.25;
  for (int grow = 0; grow < 20 && !weight_formula_holds; ++grow, radius *= 1.25) {
    if (radius < max_d) continue;
    double sigma = radius / 2.0;
    bool ok = true;
    for (const auto& e : g.edges()) {
      double dx = xy[e.i][0] - xy[e.j][0], dy = xy[e.i][1] - xy[e.j][1];
      double d2 = dx * dx + dy * dy;
      if (std::abs(e.w - std::exp(-d2 / (2.0 * sigma * sigma))) > 1e-12) ok = false;
    }
    weight_formula_holds = ok;
  }
  CHECK(weight_formula_holds);

  Graph h = random_geometric_graph(50, 0.25, 123);
  REQUIRE(h.num_edges() == g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e)
    CHECK(g.edges()[e].w == h.edges()[e].w);
  Graph other = random_geometric_graph(50, 0.25, 124);
  bool differs = other.num_edges() != g.num_edges();
  if (!differs)
    for (Index e = 0; e < g.num_edges() && !differs; ++e)
      differs = other.edges()[e].w != g.edges()[e].w;
  CHECK(differs);
}

TEST_CASE("coordinates validation") {
  Graph g = path_graph(3);
  CHECK_THROWS_AS(g.set_coordinates({{0.0, 0.0}}), DimensionMismatchError);
}

} // TEST_SUITE
