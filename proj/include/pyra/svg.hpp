#pragma once

#include "pyra/graph.hpp"
#include "pyra/mask.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pyra {

// Deterministic force-directed layout in the unit square for graphs without
// stored coordinates.
std::vector<std::array<double, 2>> spring_layout(const Graph& g, std::uint64_t seed,
                                                 int iterations = 200);

// Graph drawing: edges as lines, vertices as circles. Optional signal colors
// the vertices on a blue-white-red scale; optional mask draws eliminated
// vertices hollow.
void write_graph_svg(const std::string& path, const Graph& g,
                     const std::vector<std::array<double, 2>>& positions,
                     const Vector* signal = nullptr, const VertexMask* mask = nullptr);

// Stem plot of coefficient magnitudes.
void write_stem_svg(const std::string& path, const Vector& values, const std::string& label);

// Polylines over a shared x axis, one per named series.
void write_curves_svg(const std::string& path, const std::vector<double>& xs,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series,
                      const std::string& x_label, const std::string& y_label);

} // namespace pyra
