#pragma once

#include "pyra/common.hpp"
#include "pyra/errors.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace pyra {

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Compressed sparse row matrix. Symmetric matrices are stored with both
// triangles so that row access sees the full neighborhood. Column indices are
// sorted and unique within each row.
class CsrMatrix {
public:
  CsrMatrix() = default;

  // Duplicate (row, col) entries are summed.
  static CsrMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }

  const std::vector<Index>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  Vector multiply(const Vector& x) const;

  // zero if absent
  double coeff(Index i, Index j) const;

  Vector diagonal() const;

  // Rows and columns restricted to `keep` (ascending vertex ids); the result
  // is indexed by position in `keep`.
  CsrMatrix principal_submatrix(const std::vector<Index>& keep) const;

  // Rectangular block rows x cols, both index lists ascending.
  CsrMatrix block(const std::vector<Index>& row_sel, const std::vector<Index>& col_sel) const;

  Matrix to_dense() const;

private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

struct CgOptions {
  double tol = 1e-10; // relative residual target
  Index max_iters = 0; // 0 picks 10 * n
};

struct CgResult {
  Index iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Preconditioned conjugate gradient with a diagonal (Jacobi) preconditioner.
// apply_A(x) must evaluate a symmetric positive definite operator.
template <class ApplyA>
CgResult pcg(ApplyA&& apply_A, const Vector& b, Vector& x, const Vector& inv_diag,
             CgOptions opts = {}) {
  const Index n = b.size();
  if (x.size() != n) x = Vector::Zero(n);
  Index max_iters = opts.max_iters > 0 ? opts.max_iters : 10 * n;

  const double b_norm = b.norm();
  CgResult result;
  if (b_norm == 0.0) {
    x.setZero();
    result.converged = true;
    return result;
  }

  Vector r = b - apply_A(x);
  Vector z = inv_diag.cwiseProduct(r);
  Vector p = z;
  double rz = r.dot(z);

  for (Index k = 0; k < max_iters; ++k) {
    result.relative_residual = r.norm() / b_norm;
    if (result.relative_residual <= opts.tol) {
      result.converged = true;
      return result;
    }
    const Vector ap = apply_A(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0) || !std::isfinite(pap)) break;
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    result.iterations = k + 1;
  }
  result.relative_residual = (b - apply_A(x)).norm() / b_norm;
  result.converged = result.relative_residual <= opts.tol;
  return result;
}

} // namespace pyra
