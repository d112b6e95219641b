#pragma once

#include "pyra/graph.hpp"
#include "pyra/mask.hpp"

namespace pyra {

// Interpolation state: coefficients of the Green's-function expansion fitted
// to values on the kept vertices.
struct SplineInterpolant {
  Vector alpha; // indexed by mask.kept()
  VertexMask mask;
  double epsilon = 0.0;
};

// Solve (L + epsilon I) x = b by diagonally preconditioned CG.
Vector regularized_solve(const Laplacian& L, double epsilon, const Vector& b);

// Column j of (L + epsilon I)^{-1}: the interpolation basis element
// centered at vertex j.
Vector green_function(const Laplacian& L, double epsilon, Index j);

// Coefficients solving the interpolation conditions on the kept set. The
// system matrix is the Schur complement of (L + epsilon I) onto the kept
// vertices, applied without ever forming it: one block solve on the
// eliminated set.
SplineInterpolant fit_spline(const Vector& f_kept, const Laplacian& L, const VertexMask& mask,
                             double epsilon);

// Evaluate the fitted interpolant on every vertex: one solve
// (L + epsilon I) x = upsample(alpha). Restricted to the kept set this
// reproduces the fitted values.
Vector interpolate(const SplineInterpolant& sp, const Laplacian& L);

// Same evaluation with the solve replaced by a Chebyshev approximation of
// the kernel 1/(lambda + epsilon); for large graphs where exact solves are
// too slow.
Vector interpolate_chebyshev(const SplineInterpolant& sp, const Laplacian& L, Index order,
                             double lambda_max_bound);

} // namespace pyra
