#pragma once

#include "pyra/graph.hpp"
#include "pyra/mask.hpp"
#include "pyra/pyramid.hpp"

#include <string>
#include <vector>

namespace pyra {

// %.17g: text round-trips to the same double
std::string format_double(double v);

// Edge-list file: header "#pyra-graph n=<N>", one "i<TAB>j<TAB>w" line per
// edge, "#" comment lines. Coordinates travel as "#coord" comment lines.
// extra_comments are written as additional "#<text>" lines.
void write_graph(const std::string& path, const Graph& g,
                 const std::vector<std::string>& extra_comments = {});
Graph read_graph(const std::string& path);

// one decimal value per line
void write_signal(const std::string& path, const Vector& values);
Vector read_signal(const std::string& path);

// one 0/1 per line
void write_mask(const std::string& path, const VertexMask& mask);
VertexMask read_mask(const std::string& path);

struct PyramidContainer {
  PyramidOutput pyramid;
  std::vector<Graph> graphs; // level graphs, j = 0..J
};

// Directory layout: manifest, graph_<j>.tsv, mask_<j>.txt, y_<j>.csv,
// x_J.csv. Byte-deterministic for fixed inputs.
void write_pyramid(const std::string& dir, const PyramidOutput& p, const Graph& g0);
PyramidContainer read_pyramid(const std::string& dir);

} // namespace pyra
