#include "pyra/interpolate.hpp"

#include "pyra/sparse.hpp"
#include "pyra/spectral.hpp"

#include <cmath>
#include <string>

namespace pyra {

namespace {

void require_combinatorial(const Laplacian& L) {
  if (L.kind != LaplacianKind::combinatorial)
    throw InvalidInputError("interpolation expects a combinatorial Laplacian");
}

} // namespace

Vector regularized_solve(const Laplacian& L, double epsilon, const Vector& b) {
  require_combinatorial(L);
  if (!(epsilon > 0.0)) throw InvalidInputError("regularization requires epsilon > 0");
  if (b.size() != L.n()) throw DimensionMismatchError("rhs/Laplacian size mismatch");
  const Index n = L.n();
  auto apply = [&](const Vector& v) {
    Vector y = L.apply(v);
    y += epsilon * v;
    return y;
  };
  Vector inv_diag = L.matrix.diagonal();
  for (Index i = 0; i < n; ++i) inv_diag[i] = 1.0 / (inv_diag[i] + epsilon);
  Vector x = Vector::Zero(n);
  const CgResult r = pcg(apply, b, x, inv_diag);
  if (!r.converged)
    throw SolverFailureError("regularized solve did not converge (relative residual " +
                             std::to_string(r.relative_residual) + ")");
  return x;
}

Vector green_function(const Laplacian& L, double epsilon, Index j) {
  require_combinatorial(L);
  if (!(epsilon > 0.0)) throw InvalidInputError("regularization requires epsilon > 0");
  if (j < 0 || j >= L.n()) throw IndexOutOfRangeError("vertex out of range");
  Vector delta = Vector::Zero(L.n());
  delta[j] = 1.0;
  return regularized_solve(L, epsilon, delta);
}

SplineInterpolant fit_spline(const Vector& f_kept, const Laplacian& L, const VertexMask& mask,
                             double epsilon) {
  require_combinatorial(L);
  if (!(epsilon > 0.0)) throw InvalidInputError("regularization requires epsilon > 0");
  if (mask.size() != L.n()) throw DimensionMismatchError("mask/Laplacian size mismatch");
  if (f_kept.size() != mask.num_kept())
    throw DimensionMismatchError("values must align with the kept vertices");
  if (mask.num_kept() < 1) throw MaskTooSmallError("interpolation needs at least 1 kept vertex");

  const std::vector<Index>& kept = mask.kept();
  const std::vector<Index>& elim = mask.eliminated();

  SplineInterpolant sp;
  sp.mask = mask;
  sp.epsilon = epsilon;

  // alpha = (Lbar_kk - Lbar_ke Lbar_ee^{-1} Lbar_ek) f, with Lbar = L + eps I
  const CsrMatrix a_kk = L.matrix.principal_submatrix(kept);
  Vector alpha = a_kk.multiply(f_kept);
  alpha += epsilon * f_kept;

  if (!elim.empty()) {
    const CsrMatrix a_ke = L.matrix.block(kept, elim);
    const CsrMatrix a_ek = L.matrix.block(elim, kept);
    const CsrMatrix a_ee = L.matrix.principal_submatrix(elim);

    const Vector b = a_ek.multiply(f_kept);
    auto apply = [&](const Vector& v) {
      Vector y = a_ee.multiply(v);
      y += epsilon * v;
      return y;
    };
    Vector inv_diag = a_ee.diagonal();
    for (Index i = 0; i < inv_diag.size(); ++i) inv_diag[i] = 1.0 / (inv_diag[i] + epsilon);
    Vector z = Vector::Zero(b.size());
    const CgResult r = pcg(apply, b, z, inv_diag);
    if (!r.converged)
      throw SolverFailureError("eliminated-block solve did not converge (relative residual " +
                               std::to_string(r.relative_residual) + ")");
    alpha -= a_ke.multiply(z);
  }

  sp.alpha = alpha;
  return sp;
}

Vector interpolate(const SplineInterpolant& sp, const Laplacian& L) {
  require_combinatorial(L);
  if (sp.mask.size() != L.n()) throw DimensionMismatchError("interpolant/Laplacian size mismatch");
  return regularized_solve(L, sp.epsilon, sp.mask.upsample(sp.alpha));
}

Vector interpolate_chebyshev(const SplineInterpolant& sp, const Laplacian& L, Index order,
                             double lambda_max_bound) {
  require_combinatorial(L);
  if (sp.mask.size() != L.n()) throw DimensionMismatchError("interpolant/Laplacian size mismatch");
  const double epsilon = sp.epsilon;
  FilterKernel resolvent{"resolvent", [epsilon](double lambda) { return 1.0 / (lambda + epsilon); },
                         false};
  return apply_filter_chebyshev(sp.mask.upsample(sp.alpha), resolvent, L, order, lambda_max_bound);
}

} // namespace pyra
