import math

import numpy as np
import pytest

import pyra


def test_graph_construction_and_edges():
    g = pyra.Graph(3, [(0, 1, 1.0), (1, 2, 2.0)])
    assert g.num_vertices == 3
    assert g.num_edges == 2
    assert g.edges() == [(0, 1, 1.0), (1, 2, 2.0)]
    assert g.weight(2, 1) == 2.0
    np.testing.assert_allclose(g.degrees(), [1.0, 3.0, 2.0])


def test_invalid_graph_raises():
    with pytest.raises(ValueError):
        pyra.Graph(2, [(0, 0, 1.0)])
    with pytest.raises(ValueError):
        pyra.Graph(2, [(0, 1, -1.0)])


def test_laplacian_dense_matches_definition():
    g = pyra.path_graph(3)
    L = pyra.laplacian(g)
    want = np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])
    np.testing.assert_allclose(L.dense(), want)
    x = np.array([1.0, 0.0, 0.0])
    np.testing.assert_allclose(L.apply(x), want @ x)


def test_normalized_spectrum_in_unit_band():
    g = pyra.ring_graph(10)
    L = pyra.laplacian(g, kind="normalized")
    vals, vecs = pyra.dense_eigendecomposition(L)
    assert vals[0] == pytest.approx(0.0, abs=1e-10)
    assert vals[-1] <= 2.0 + 1e-10
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(10), atol=1e-10)


def test_downsample_splits_bipartite_graph():
    g = pyra.path_graph(8)
    mask = pyra.select_largest_eigenvector(pyra.laplacian(g), seed=1)
    assert pyra.is_bipartition_split(g, mask)
    assert mask.kept() == [0, 2, 4, 6]


def test_kron_reduce_path_closed_form():
    g = pyra.path_graph(5)
    mask = pyra.VertexMask(5, [0, 2, 4])
    red = pyra.kron_reduce(pyra.laplacian(g), mask)
    want = np.array([[0.5, -0.5, 0.0], [-0.5, 1.0, -0.5], [0.0, -0.5, 0.5]])
    np.testing.assert_allclose(red.dense(), want, atol=1e-12)


def test_effective_resistance_path_is_distance():
    L = pyra.laplacian(pyra.path_graph(6))
    assert pyra.effective_resistance(L, 0, 5) == pytest.approx(5.0, abs=1e-8)


def test_sparsify_single_edge_graph_is_fixed_point():
    g = pyra.Graph(2, [(0, 1, 3.0)])
    out, repaired = pyra.spectral_sparsify(g, q=50, seed=4)
    assert not repaired
    assert out.edges() == [(0, 1, 3.0)]


def test_chebyshev_filter_tracks_exact_filter():
    g = pyra.random_geometric_graph(60, 0.35, seed=2)
    L = pyra.laplacian(g)
    rng = np.random.default_rng(7)
    f = rng.standard_normal(60)
    exact = pyra.filter_signal(L, f, "green:0.5")
    approx = pyra.filter_signal_chebyshev(L, f, "green:0.5", order=50)
    assert np.linalg.norm(approx - exact) / np.linalg.norm(exact) < 1e-3


def test_interpolation_reproduces_kept_values():
    g = pyra.random_geometric_graph(40, 0.4, seed=3)
    L = pyra.laplacian(g)
    mask = pyra.select_largest_eigenvector(L, seed=3)
    rng = np.random.default_rng(11)
    values = rng.standard_normal(mask.num_kept)
    full = pyra.interpolate_signal(L, mask, values, epsilon=0.5)
    np.testing.assert_allclose(full[mask.kept()], values, atol=1e-8)


def test_pyramid_round_trip_and_redundancy():
    g = pyra.path_graph(16)
    L = pyra.laplacian(g)
    x = pyra.synthetic_signal("lowpass-noise:1", g, L, seed=5)
    p = pyra.analyze(x, L, levels=3, epsilon=0.5, seed=1)
    assert p.num_levels == 3
    assert pyra.redundancy(p) == 1.875
    back = pyra.synthesize(p, L)
    assert np.linalg.norm(back - x) / np.linalg.norm(x) < 1e-9


def test_pyramid_least_squares_synthesis():
    g = pyra.random_geometric_graph(50, 0.35, seed=6)
    L = pyra.laplacian(g)
    x = pyra.synthetic_signal("lowpass-noise:1", g, L, seed=6)
    p = pyra.analyze(x, L, levels=2, epsilon=0.5, seed=2)
    back = pyra.synthesize(p, L, least_squares=True)
    assert np.linalg.norm(back - x) / np.linalg.norm(x) < 1e-6


def test_thresholding_keeps_requested_count():
    g = pyra.random_geometric_graph(30, 0.4, seed=8)
    L = pyra.laplacian(g)
    x = pyra.synthetic_signal("lowpass-noise:1", g, L, seed=8)
    p = pyra.analyze(x, L, levels=2, epsilon=0.5, seed=3)
    kept = pyra.threshold_coefficients(p, 10)
    nonzero = np.count_nonzero(kept.coarsest)
    for j in range(kept.num_levels):
        nonzero += np.count_nonzero(kept.prediction_error(j))
    assert nonzero == 10


def test_analyze_rejects_disconnected_graph():
    g = pyra.Graph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    L = pyra.laplacian(g)
    with pytest.raises(ValueError):
        pyra.analyze(np.zeros(4), L, levels=1, epsilon=0.5)


def test_graph_file_round_trip(tmp_path):
    g = pyra.random_geometric_graph(12, 0.5, seed=9)
    path = str(tmp_path / "g.tsv")
    pyra.write_graph(g, path)
    back = pyra.read_graph(path)
    assert back.num_vertices == g.num_vertices
    assert back.edges() == g.edges()
    np.testing.assert_allclose(back.coordinates(), g.coordinates())


def test_nodal_domains_on_bipartite_graph():
    g = pyra.k_regular_bipartite_graph(12, 2, seed=10)
    L = pyra.laplacian(g)
    vals, vecs = pyra.dense_eigendecomposition(L)
    pos, neg = pyra.count_strong_nodal_domains(g, vecs[:, -1])
    assert pos + neg == 12
