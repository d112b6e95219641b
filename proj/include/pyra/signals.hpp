#pragma once

#include "pyra/graph.hpp"

#include <cstdint>
#include <string>

namespace pyra {

// +1/-1 by the sign of the second-smallest Laplacian eigenvector:
// piecewise-constant across the graph's natural cut.
Vector fiedler_sign_signal(const Laplacian& L);

// Two quadratic patches over the vertex coordinates, split at the median x;
// smooth inside each patch, discontinuous across the split. Needs
// coordinates.
Vector poly2_patch_signal(const Graph& g);

// Unit Gaussian noise smoothed by the tau/(tau + lambda) kernel.
Vector lowpass_noise_signal(const Laplacian& L, double tau, std::uint64_t seed);

// "fiedler-sign", "poly2-patch", "lowpass-noise:<tau>"
Vector synthetic_signal(const std::string& spec, const Graph& g, const Laplacian& L,
                        std::uint64_t seed);

} // namespace pyra
