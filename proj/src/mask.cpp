#include "pyra/mask.hpp"

#include <utility>

namespace pyra {

VertexMask::VertexMask(std::vector<char> keep) : keep_(std::move(keep)) {
  for (Index i = 0; i < static_cast<Index>(keep_.size()); ++i)
    (keep_[static_cast<std::size_t>(i)] ? kept_ : eliminated_).push_back(i);
}

VertexMask VertexMask::from_kept(Index n, const std::vector<Index>& kept_vertices) {
  std::vector<char> keep(static_cast<std::size_t>(n), 0);
  for (Index v : kept_vertices) {
    if (v < 0 || v >= n) throw IndexOutOfRangeError("kept vertex out of range");
    keep[static_cast<std::size_t>(v)] = 1;
  }
  return VertexMask(std::move(keep));
}

Vector VertexMask::select(const Vector& x) const {
  if (x.size() != size()) throw DimensionMismatchError("mask/signal length mismatch");
  Vector out(num_kept());
  for (Index k = 0; k < num_kept(); ++k) out[k] = x[kept_[static_cast<std::size_t>(k)]];
  return out;
}

Vector VertexMask::upsample(const Vector& x_kept) const {
  if (x_kept.size() != num_kept()) throw DimensionMismatchError("mask/coefficient length mismatch");
  Vector out = Vector::Zero(size());
  for (Index k = 0; k < num_kept(); ++k) out[kept_[static_cast<std::size_t>(k)]] = x_kept[k];
  return out;
}

} // namespace pyra
