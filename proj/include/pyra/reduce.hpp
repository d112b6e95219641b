#pragma once

#include "pyra/graph.hpp"
#include "pyra/mask.hpp"

#include <cstdint>
#include <vector>

namespace pyra {

// Schur complement of the Laplacian onto the kept vertex set. Eliminated-block
// systems are solved densely below 200 eliminated vertices and by
// diagonally preconditioned CG above; solver noise is cleaned up by a clamp
// rule so the result is an exact Laplacian (zero row sums, nonpositive
// off-diagonals).
Laplacian kron_reduce(const Laplacian& L, const VertexMask& mask);

// Inverse of laplacian(): edge weights from negated off-diagonals.
Graph graph_from_laplacian(const Laplacian& L);

// (delta_i - delta_j)' L^+ (delta_i - delta_j), by one conjugate-gradient
// solve orthogonal to the constant vector.
double effective_resistance(const Laplacian& L, Index i, Index j);

// Resistance of every listed vertex pair; factors once densely at small n,
// falls back to per-pair CG solves above.
std::vector<double> pair_effective_resistances(const Laplacian& L,
                                               const std::vector<Edge>& pairs);

// Normalized sampling distribution over g's edges: p_e proportional to
// resistance times weight.
std::vector<double> edge_sampling_probabilities(const Graph& g);

struct SparsifyConfig {
  enum class QRule { explicit_count, scaled }; // scaled: Q = round(c * N * ln N)
  QRule rule = QRule::scaled;
  Index q = 0; // explicit_count only
  double c = 4.0; // scaled only
  std::uint64_t seed = 0;
};

Index resolve_sample_count(const SparsifyConfig& cfg, Index n);

struct SparsifyResult {
  Graph graph;
  bool repaired = false; // connectivity restored from original edges
};

// Importance-sampled edge subsampling, Q draws with replacement, accumulating
// w/(Q p_e) per draw. Unbiased for the weight matrix. If the sampled graph is
// disconnected, a maximum-weight spanning forest across components is added
// back from the original edges and the result is flagged repaired.
SparsifyResult spectral_sparsify(const Graph& g, const SparsifyConfig& cfg);

struct ReduceResult {
  Laplacian laplacian;
  bool sparsified = false;
  bool repaired = false;
};

// Kron reduction followed by optional spectral sparsification.
ReduceResult reduce_pipeline(const Laplacian& L, const VertexMask& mask,
                             const SparsifyConfig& cfg, bool sparsify);

} // namespace pyra
