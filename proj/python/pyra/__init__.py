"""Graph signal pyramids: eigenvector downsampling, Kron reduction,
spectral sparsification, spline interpolation, and the multiscale
analysis/synthesis transform built from them."""

from ._pyra import (
    CorruptInputError,
    Graph,
    InvalidInputError,
    Laplacian,
    NumericError,
    PowerMethodResult,
    Pyramid,
    VertexMask,
    analyze,
    balanced_tree_graph,
    complete_graph,
    count_strong_nodal_domains,
    dense_eigendecomposition,
    effective_resistance,
    filter_signal,
    filter_signal_chebyshev,
    graph_from_laplacian,
    grid_graph,
    interpolate_signal,
    is_bipartition_split,
    is_connected,
    k_regular_bipartite_graph,
    kron_reduce,
    laplacian,
    path_graph,
    power_method,
    random_geometric_graph,
    read_graph,
    reduce_pipeline,
    redundancy,
    regularize,
    ring_graph,
    select_largest_eigenvector,
    spectral_sparsify,
    synthesize,
    synthetic_signal,
    threshold_coefficients,
    two_coloring,
    write_graph,
)

__all__ = [
    "CorruptInputError",
    "Graph",
    "InvalidInputError",
    "Laplacian",
    "NumericError",
    "PowerMethodResult",
    "Pyramid",
    "VertexMask",
    "analyze",
    "balanced_tree_graph",
    "complete_graph",
    "count_strong_nodal_domains",
    "dense_eigendecomposition",
    "effective_resistance",
    "filter_signal",
    "filter_signal_chebyshev",
    "graph_from_laplacian",
    "grid_graph",
    "interpolate_signal",
    "is_bipartition_split",
    "is_connected",
    "k_regular_bipartite_graph",
    "kron_reduce",
    "laplacian",
    "path_graph",
    "power_method",
    "random_geometric_graph",
    "read_graph",
    "reduce_pipeline",
    "redundancy",
    "regularize",
    "ring_graph",
    "select_largest_eigenvector",
    "spectral_sparsify",
    "synthesize",
    "synthetic_signal",
    "threshold_coefficients",
    "two_coloring",
    "write_graph",
]

__version__ = "0.1.0"
