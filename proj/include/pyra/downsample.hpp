#pragma once

#include "pyra/graph.hpp"
#include "pyra/mask.hpp"
#include "pyra/spectral.hpp"

#include <cstdint>
#include <utility>

namespace pyra {

// Keep the vertices where the dominant Laplacian eigenvector (power-method
// estimate, sign-canonicalized) is >= 0. Falls back to a median split of the
// final iterate when the sign pattern never settles (repeated dominant
// eigenvalue) or polarity would keep everything.
VertexMask select_largest_eigenvector(const Laplacian& L, std::uint64_t seed,
                                      PowerMethodOptions opts = {});

// Counts of maximal connected subgraphs with f strictly positive and strictly
// negative; zero vertices belong to neither.
std::pair<Index, Index> count_strong_nodal_domains(const Vector& f, const Graph& g);

// True iff no edge joins two kept or two eliminated vertices. The graph must
// be bipartite.
bool is_bipartition_split(const VertexMask& mask, const Graph& g);

} // namespace pyra
