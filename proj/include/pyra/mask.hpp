#pragma once

#include "pyra/common.hpp"
#include "pyra/errors.hpp"

#include <vector>

namespace pyra {

// Keep/eliminate split of a vertex set. Kept vertices form V1; restricting a
// signal to the kept list (ascending) realizes the selection matrix.
class VertexMask {
public:
  VertexMask() = default;

  explicit VertexMask(std::vector<char> keep);

  static VertexMask from_kept(Index n, const std::vector<Index>& kept_vertices);

  Index size() const { return static_cast<Index>(keep_.size()); }
  Index num_kept() const { return static_cast<Index>(kept_.size()); }
  bool keep(Index i) const { return keep_[static_cast<std::size_t>(i)] != 0; }

  // ascending vertex ids
  const std::vector<Index>& kept() const { return kept_; }
  const std::vector<Index>& eliminated() const { return eliminated_; }

  // restrict to kept vertices
  Vector select(const Vector& x) const;
  // insert zeros on eliminated vertices
  Vector upsample(const Vector& x_kept) const;

private:
  std::vector<char> keep_;
  std::vector<Index> kept_;
  std::vector<Index> eliminated_;
};

} // namespace pyra
