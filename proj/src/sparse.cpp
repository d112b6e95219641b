#include "pyra/sparse.hpp"

#include <algorithm>

namespace pyra {

CsrMatrix CsrMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw IndexOutOfRangeError("triplet index out of range");
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  std::size_t i = 0;
  while (i < triplets.size()) {
    const Index r = triplets[i].row;
    const Index c = triplets[i].col;
    double v = triplets[i].value;
    std::size_t j = i + 1;
    while (j < triplets.size() && triplets[j].row == r && triplets[j].col == c) {
      v += triplets[j].value;
      ++j;
    }
    m.col_idx_.push_back(c);
    m.values_.push_back(v);
    ++m.row_ptr_[static_cast<std::size_t>(r) + 1];
    i = j;
  }
  for (Index r = 0; r < rows; ++r)
    m.row_ptr_[static_cast<std::size_t>(r) + 1] += m.row_ptr_[static_cast<std::size_t>(r)];
  return m;
}

Vector CsrMatrix::multiply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionMismatchError("matvec size mismatch");
  Vector y = Vector::Zero(rows_);
  for (Index r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (Index k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
      acc += values_[static_cast<std::size_t>(k)] * x[col_idx_[static_cast<std::size_t>(k)]];
    y[r] = acc;
  }
  return y;
}

double CsrMatrix::coeff(Index i, Index j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw IndexOutOfRangeError("coeff index out of range");
  const auto begin = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i)];
  const auto end = col_idx_.begin() + row_ptr_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Vector CsrMatrix::diagonal() const {
  const Index n = std::min(rows_, cols_);
  Vector d(n);
  for (Index i = 0; i < n; ++i) d[i] = coeff(i, i);
  return d;
}

CsrMatrix CsrMatrix::principal_submatrix(const std::vector<Index>& keep) const {
  return block(keep, keep);
}

CsrMatrix CsrMatrix::block(const std::vector<Index>& row_sel, const std::vector<Index>& col_sel) const {
  std::vector<Index> col_map(static_cast<std::size_t>(cols_), -1);
  for (std::size_t k = 0; k < col_sel.size(); ++k) {
    const Index c = col_sel[k];
    if (c < 0 || c >= cols_) throw IndexOutOfRangeError("block column out of range");
    col_map[static_cast<std::size_t>(c)] = static_cast<Index>(k);
  }

  CsrMatrix m;
  m.rows_ = static_cast<Index>(row_sel.size());
  m.cols_ = static_cast<Index>(col_sel.size());
  m.row_ptr_.assign(row_sel.size() + 1, 0);
  for (std::size_t r = 0; r < row_sel.size(); ++r) {
    const Index src = row_sel[r];
    if (src < 0 || src >= rows_) throw IndexOutOfRangeError("block row out of range");
    for (Index k = row_ptr_[static_cast<std::size_t>(src)]; k < row_ptr_[static_cast<std::size_t>(src) + 1]; ++k) {
      const Index mapped = col_map[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)])];
      if (mapped < 0) continue;
      m.col_idx_.push_back(mapped);
      m.values_.push_back(values_[static_cast<std::size_t>(k)]);
      ++m.row_ptr_[r + 1];
    }
  }
  for (std::size_t r = 0; r < row_sel.size(); ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

Matrix CsrMatrix::to_dense() const {
  Matrix d = Matrix::Zero(rows_, cols_);
  for (Index r = 0; r < rows_; ++r)
    for (Index k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
      d(r, col_idx_[static_cast<std::size_t>(k)]) = values_[static_cast<std::size_t>(k)];
  return d;
}

} // namespace pyra
