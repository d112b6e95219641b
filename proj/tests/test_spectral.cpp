#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "pyra/rng.hpp"
#include "pyra/spectral.hpp"
#include "support/oracles.hpp"

using namespace pyra;

TEST_SUITE("spectral") {

TEST_CASE("canonical_sign flips toward a positive largest entry") {
  Vector v(4);
  v << 0.1, -0.9, 0.3, 0.2;
  Vector c = canonical_sign(v);
  CHECK(c[1] == doctest::Approx(0.9));
  CHECK(c[0] == doctest::Approx(-0.1));

  Vector already(3);
  already << 0.8, -0.1, 0.1;
  Vector same = canonical_sign(already);
  CHECK(same[0] == doctest::Approx(0.8));

  // magnitude tie broken by the lowest index
  Vector tie(4);
  tie << -0.5, 0.5, -0.5, 0.5;
  Vector t = canonical_sign(tie);
  CHECK(t[0] == doctest::Approx(0.5));
  CHECK(t[1] == doctest::Approx(-0.5));
}

TEST_CASE("dense eigendecomposition reconstructs the matrix") {
  Graph g = random_geometric_graph(24, 0.4, 3);
  auto L = laplacian(g);
  auto dec = dense_eigendecomposition(L);
  REQUIRE(dec.n() == 24);
  for (Index i = 1; i < dec.n(); ++i)
    CHECK(dec.eigenvalues[i] >= dec.eigenvalues[i - 1] - 1e-12);
  Matrix U = dec.eigenvectors;
  CHECK((U.transpose() * U - Matrix::Identity(24, 24)).norm() <= 1e-10);
  Matrix rebuilt = U * dec.eigenvalues.asDiagonal() * U.transpose();
  CHECK((rebuilt - L.matrix.to_dense()).norm() <= 1e-9);
  // every column is sign-canonical
  for (Index c = 0; c < 24; ++c) {
    Vector col = U.col(c);
    Vector canon = canonical_sign(col);
    CHECK((col - canon).norm() == 0.0);
  }
  CHECK(dec.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("size cap rejects huge dense solves") {
  Graph g = path_graph(30);
  auto L = laplacian(g);
  CHECK_THROWS_AS(dense_eigendecomposition(L, 10), TooLargeError);
}

TEST_CASE("power method finds the dominant eigenvalue") {
  // a wide polarity window keeps it iterating well past sign lock-in, so the
  // Rayleigh quotient is sharp even on small-gap graphs
  PowerMethodOptions opts;
  opts.max_iters = 20000;
  opts.polarity_window = 2000;
  for (auto g : {path_graph(16), ring_graph(11), complete_graph(9),
                 random_geometric_graph(30, 0.35, 8)}) {
    auto L = laplacian(g);
    auto dec = dense_eigendecomposition(L);
    double want = dec.eigenvalues[dec.n() - 1];
    auto pm = power_method(L, 4, opts);
    CHECK(std::abs(pm.lambda - want) <= 1e-6 * std::max(1.0, want));
    CHECK(pm.vector.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("power method converges in the sign pattern on a bipartite graph") {
  auto L = laplacian(k_regular_bipartite_graph(3, 16, 5));
  auto pm_default = power_method(L, 9);
  CHECK(pm_default.converged);

  PowerMethodOptions opts;
  opts.max_iters = 20000;
  opts.polarity_window = 2000;
  auto pm = power_method(L, 9, opts);
  CHECK(pm.converged);
  // dominant eigenvector of a k-RBG is constant magnitude with polarity by side
  Vector v = canonical_sign(pm.vector);
  for (Index i = 0; i < 16; ++i)
    CHECK(std::abs(std::abs(v[i]) - 1.0 / 4.0) <= 1e-6);
  CHECK(std::abs(pm.lambda - 6.0) <= 1e-6);
}

TEST_CASE("filter kernel parsing") {
  auto g = FilterKernel::parse("green:0.5");
  CHECK(g.name == "green:0.5");
  CHECK(g(0.0) == doctest::Approx(1.0));
  CHECK(g(0.5) == doctest::Approx(0.5));
  CHECK_FALSE(g.exact_only);

  auto h = FilterKernel::parse("heat:2");
  CHECK(h(1.0) == doctest::Approx(std::exp(-2.0)));

  auto il = FilterKernel::parse("ideal-low:1.5");
  CHECK(il.exact_only);
  CHECK(il(1.5) == 1.0);
  CHECK(il(1.500001) == 0.0);

  auto id = FilterKernel::parse("identity");
  CHECK(id(3.7) == 1.0);

  CHECK_THROWS_AS(FilterKernel::parse("green"), InvalidInputError);
  CHECK_THROWS_AS(FilterKernel::parse("green:"), InvalidInputError);
  CHECK_THROWS_AS(FilterKernel::parse("green:abc"), InvalidInputError);
  CHECK_THROWS_AS(FilterKernel::parse("green:0.5junk"), InvalidInputError);
  CHECK_THROWS_AS(FilterKernel::parse("green:-1"), InvalidInputError);
  CHECK_THROWS_AS(FilterKernel::parse("boxcar:1"), InvalidInputError);
}

TEST_CASE("fourier transform is orthonormal") {
  Graph g = random_geometric_graph(20, 0.4, 11);
  auto dec = dense_eigendecomposition(laplacian(g));
  Rng rng(2);
  Vector f = rng.normal_vector(20);
  Vector fh = graph_fourier(f, dec);
  CHECK(std::abs(fh.norm() - f.norm()) <= 1e-10);
  Vector back = inverse_graph_fourier(fh, dec);
  CHECK((back - f).norm() <= 1e-10);
}

TEST_CASE("exact filtering matches the dense oracle") {
  Graph g = random_geometric_graph(26, 0.4, 13);
  auto L = laplacian(g);
  auto dec = dense_eigendecomposition(L);
  Rng rng(3);
  Vector f = rng.normal_vector(26);
  for (const char* spec : {"green:0.5", "heat:1.3", "identity", "ideal-low:2.0"}) {
    auto h = FilterKernel::parse(spec);
    Vector got = apply_filter_exact(f, h, dec);
    Vector want = oracle::dense_filter(L.matrix.to_dense(), h.fn, f);
    CHECK(oracle::relative_error(got, want) <= 1e-9);
  }
}

TEST_CASE("chebyshev filtering is exact for low-degree polynomials") {
  Graph g = random_geometric_graph(22, 0.4, 17);
  auto L = laplacian(g);
  auto dec = dense_eigendecomposition(L);
  double bound = dec.eigenvalues[dec.n() - 1] * 1.05;
  Rng rng(4);
  Vector f = rng.normal_vector(22);

  FilterKernel lin{"linear", [](double x) { return 2.0 + 3.0 * x; }, false};
  Vector got = apply_filter_chebyshev(f, lin, L, 1, bound);
  Vector want = oracle::dense_filter(L.matrix.to_dense(), lin.fn, f);
  CHECK(oracle::relative_error(got, want) <= 1e-12);

  FilterKernel quad{"quad", [](double x) { return 1.0 - x + 0.25 * x * x; }, false};
  got = apply_filter_chebyshev(f, quad, L, 2, bound);
  want = oracle::dense_filter(L.matrix.to_dense(), quad.fn, f);
  CHECK(oracle::relative_error(got, want) <= 1e-12);
}

TEST_CASE("chebyshev filtering approximates smooth kernels") {
  Graph g = random_geometric_graph(40, 0.3, 19);
  auto L = laplacian(g);
  auto dec = dense_eigendecomposition(L);
  double bound = dec.eigenvalues[dec.n() - 1] * 1.01;
  Rng rng(5);
  Vector f = rng.normal_vector(40);
  for (const char* spec : {"green:0.5", "heat:0.8"}) {
    auto h = FilterKernel::parse(spec);
    Vector got = apply_filter_chebyshev(f, h, L, 50, bound);
    Vector want = apply_filter_exact(f, h, dec);
    CHECK(oracle::relative_error(got, want) <= 1e-3);
  }
}

TEST_CASE("discontinuous kernels refuse the polynomial path") {
  Graph g = path_graph(10);
  auto L = laplacian(g);
  Vector f = Vector::Ones(10);
  auto il = FilterKernel::parse("ideal-low:1.0");
  CHECK_THROWS_AS(apply_filter_chebyshev(f, il, L, 30, 4.0), InvalidInputError);
}

TEST_CASE("chebyshev input validation") {
  auto h = FilterKernel::parse("green:1.0");
  CHECK_THROWS_AS(chebyshev_coefficients(h, 10, 0.0), BadSpectrumBoundError);
  CHECK_THROWS_AS(chebyshev_coefficients(h, 10, -1.0), BadSpectrumBoundError);
  CHECK_THROWS_AS(chebyshev_coefficients(h, 0, 2.0), InvalidInputError);
}

} // TEST_SUITE
