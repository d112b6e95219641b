#pragma once

#include "pyra/common.hpp"
#include "pyra/errors.hpp"
#include "pyra/graph.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pyra {

struct SpectralDecomposition {
  Vector eigenvalues; // nondecreasing
  Matrix eigenvectors; // orthonormal columns, sign-canonicalized

  Index n() const { return eigenvalues.size(); }
};

// Flip sign so the entry of largest magnitude is positive; ties broken by the
// lowest index.
Vector canonical_sign(Vector v);

// Full symmetric eigendecomposition; the reference ("oracle") path the
// iterative routines are compared against.
SpectralDecomposition dense_eigendecomposition(const Laplacian& L, Index size_cap = 5000);

struct PowerMethodResult {
  double lambda = 0.0; // Rayleigh quotient of the final iterate
  Vector vector; // unit norm, not sign-canonicalized
  bool converged = false; // sign pattern held for polarity_window iterations
  Index iterations = 0;
};

struct PowerMethodOptions {
  Index max_iters = 0; // 0 picks 20*sqrt(N) + 200
  Index polarity_window = 10;
  bool shift = false; // iterate on L - (trace/n) I instead of L
};

// Dominant-eigenpair estimate. Converged means the sign pattern AND the
// Rayleigh quotient both held steady for polarity_window consecutive
// iterations; a stable pattern with a still-drifting quotient is a known
// false positive on small-gap graphs. Non-convergence is reported in the
// result, with the last iterate attached.
PowerMethodResult power_method(const Laplacian& L, std::uint64_t seed,
                               PowerMethodOptions opts = {});

// Scalar spectral multiplier h(lambda) with a printable name.
struct FilterKernel {
  std::string name;
  std::function<double(double)> fn;
  bool exact_only = false; // discontinuous; no polynomial approximation

  double operator()(double lambda) const { return fn(lambda); }

  static FilterKernel identity();
  static FilterKernel green(double tau); // tau / (tau + lambda)
  static FilterKernel heat(double t); // exp(-t lambda)
  static FilterKernel ideal_low(double cutoff); // indicator lambda <= cutoff
  // "green:0.5", "heat:2", "ideal-low:1.5"
  static FilterKernel parse(const std::string& spec);
};

// forward transform: coefficients <f, u_l>
Vector graph_fourier(const Vector& f, const SpectralDecomposition& dec);
Vector inverse_graph_fourier(const Vector& f_hat, const SpectralDecomposition& dec);

Vector apply_filter_exact(const Vector& f, const FilterKernel& h,
                          const SpectralDecomposition& dec);

// c_0..c_K for h on [0, lambda_max_bound], by quadrature at Chebyshev nodes
std::vector<double> chebyshev_coefficients(const FilterKernel& h, Index order,
                                           double lambda_max_bound, Index quadrature_points = 1000);

// Polynomial filtering with `order` matrix-vector products; exact for
// polynomial kernels of degree <= order.
Vector apply_filter_chebyshev(const Vector& f, const FilterKernel& h, const Laplacian& L,
                              Index order, double lambda_max_bound);

} // namespace pyra
