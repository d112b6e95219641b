#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/eigen.h>

#include <optional>
#include <stdexcept>

#include "pyra/graph.hpp"
#include "pyra/mask.hpp"
#include "pyra/spectral.hpp"
#include "pyra/downsample.hpp"
#include "pyra/reduce.hpp"
#include "pyra/interpolate.hpp"
#include "pyra/pyramid.hpp"
#include "pyra/signals.hpp"
#include "pyra/io.hpp"
#include "pyra/errors.hpp"

namespace py = pybind11;
using namespace pyra;

namespace {

Graph make_graph(Index n, const std::vector<std::tuple<Index, Index, double>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [i, j, w] : edges) es.push_back({i, j, w});
  return Graph(n, es);
}

std::vector<std::tuple<Index, Index, double>> edge_list(const Graph& g) {
  std::vector<std::tuple<Index, Index, double>> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.emplace_back(e.i, e.j, e.w);
  return out;
}

const char* kind_name(LaplacianKind k) {
  switch (k) {
    case LaplacianKind::combinatorial: return "combinatorial";
    case LaplacianKind::normalized: return "normalized";
    case LaplacianKind::regularized: return "regularized";
  }
  return "?";
}

LaplacianKind kind_from_name(const std::string& s) {
  if (s == "combinatorial") return LaplacianKind::combinatorial;
  if (s == "normalized") return LaplacianKind::normalized;
  if (s == "regularized") return LaplacianKind::regularized;
  throw InvalidInputError("unknown laplacian kind: " + s);
}

double resolve_bound(const Laplacian& L, std::optional<double> bound) {
  if (bound) return *bound;
  auto pm = power_method(L, 0, PowerMethodOptions{});
  return pm.lambda * 1.01;
}

SparsifyConfig make_sparsify_cfg(std::optional<Index> q, double c, std::uint64_t seed) {
  SparsifyConfig cfg;
  if (q) {
    cfg.rule = SparsifyConfig::QRule::explicit_count;
    cfg.q = *q;
  } else {
    cfg.rule = SparsifyConfig::QRule::scaled;
    cfg.c = c;
  }
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_pyra, m) {
  m.doc() = "Graph signal pyramids: downsampling, Kron reduction, spectral "
            "sparsification, spline interpolation, and multiscale transforms.";

  py::register_exception<CorruptInputError>(m, "CorruptInputError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
  py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("edges", &edge_list)
      .def("degrees", &Graph::degrees)
      .def("max_degree", &Graph::max_degree)
      .def("weight", &Graph::weight, py::arg("i"), py::arg("j"))
      .def("coordinates",
           [](const Graph& g) { return g.coordinates(); })
      .def("set_coordinates", &Graph::set_coordinates)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<Laplacian>(m, "Laplacian")
      .def_property_readonly("n", &Laplacian::n)
      .def_property_readonly("kind",
                             [](const Laplacian& L) { return std::string(kind_name(L.kind)); })
      .def_readonly("epsilon", &Laplacian::epsilon)
      .def("dense", [](const Laplacian& L) { return L.matrix.to_dense(); })
      .def("apply", &Laplacian::apply, py::arg("x"))
      .def("__repr__", [](const Laplacian& L) {
        return std::string("Laplacian(") + kind_name(L.kind) +
               ", n=" + std::to_string(L.n()) + ")";
      });

  py::class_<VertexMask>(m, "VertexMask")
      .def(py::init(&VertexMask::from_kept), py::arg("n"), py::arg("kept"))
      .def_property_readonly("size", &VertexMask::size)
      .def_property_readonly("num_kept", &VertexMask::num_kept)
      .def("keep", &VertexMask::keep, py::arg("i"))
      .def("kept", &VertexMask::kept)
      .def("eliminated", &VertexMask::eliminated)
      .def("select", &VertexMask::select, py::arg("x"))
      .def("upsample", &VertexMask::upsample, py::arg("x_kept"))
      .def("__repr__", [](const VertexMask& mk) {
        return "VertexMask(kept=" + std::to_string(mk.num_kept()) + "/" +
               std::to_string(mk.size()) + ")";
      });

  py::class_<PowerMethodResult>(m, "PowerMethodResult")
      .def_readonly("eigenvalue", &PowerMethodResult::lambda)
      .def_readonly("eigenvector", &PowerMethodResult::vector)
      .def_readonly("iterations", &PowerMethodResult::iterations)
      .def_readonly("converged", &PowerMethodResult::converged);

  py::class_<PyramidOutput>(m, "Pyramid")
      .def_property_readonly("num_levels", &PyramidOutput::num_levels)
      .def_readonly("n0", &PyramidOutput::n0)
      .def_readonly("coarsest", &PyramidOutput::coarsest)
      .def("total_coefficients", &PyramidOutput::total_coefficients)
      .def("prediction_error",
           [](const PyramidOutput& p, std::size_t j) {
             if (j >= p.levels.size()) throw py::index_error();
             return p.levels[j].prediction_error;
           },
           py::arg("level"))
      .def("mask",
           [](const PyramidOutput& p, std::size_t j) {
             if (j >= p.levels.size()) throw py::index_error();
             return p.levels[j].mask;
           },
           py::arg("level"))
      .def("laplacian",
           [](const PyramidOutput& p, std::size_t j) {
             if (j >= p.levels.size()) throw py::index_error();
             return p.levels[j].laplacian_next;
           },
           py::arg("level"))
      .def("__repr__", [](const PyramidOutput& p) {
        return "Pyramid(levels=" + std::to_string(p.num_levels()) +
               ", n0=" + std::to_string(p.n0) + ")";
      });

  m.def("path_graph", &path_graph, py::arg("n"));
  m.def("ring_graph", &ring_graph, py::arg("n"));
  m.def("grid_graph", &grid_graph, py::arg("rows"), py::arg("cols"),
        py::arg("wrap") = false);
  m.def("balanced_tree_graph", &balanced_tree_graph, py::arg("branching"),
        py::arg("depth"));
  m.def(
      "k_regular_bipartite_graph",
      [](Index n, Index k, std::uint64_t seed) {
        return k_regular_bipartite_graph(k, n, seed);
      },
      py::arg("n"), py::arg("k"), py::arg("seed") = 0);
  m.def("random_geometric_graph", &random_geometric_graph, py::arg("n"),
        py::arg("radius"), py::arg("seed") = 0);
  m.def("complete_graph", &complete_graph, py::arg("n"));

  m.def(
      "laplacian",
      [](const Graph& g, const std::string& kind, double epsilon) {
        return laplacian(g, kind_from_name(kind), epsilon);
      },
      py::arg("graph"), py::arg("kind") = "combinatorial", py::arg("epsilon") = 0.0);
  m.def("regularize", &regularize, py::arg("laplacian"), py::arg("epsilon"));
  m.def("is_connected", &is_connected, py::arg("graph"));
  m.def("two_coloring", &two_coloring, py::arg("graph"));

  m.def(
      "dense_eigendecomposition",
      [](const Laplacian& L) {
        auto dec = dense_eigendecomposition(L);
        return py::make_tuple(dec.eigenvalues, dec.eigenvectors);
      },
      py::arg("laplacian"));
  m.def(
      "power_method",
      [](const Laplacian& L, std::uint64_t seed, Index max_iters,
         Index polarity_window, bool shift) {
        PowerMethodOptions opts;
        if (max_iters > 0) opts.max_iters = max_iters;
        opts.polarity_window = polarity_window;
        opts.shift = shift;
        return power_method(L, seed, opts);
      },
      py::arg("laplacian"), py::arg("seed") = 0, py::arg("max_iters") = 0,
      py::arg("polarity_window") = 10, py::arg("shift") = false);

  m.def(
      "select_largest_eigenvector",
      [](const Laplacian& L, std::uint64_t seed) {
        return select_largest_eigenvector(L, seed, PowerMethodOptions{});
      },
      py::arg("laplacian"), py::arg("seed") = 0);
  m.def(
      "count_strong_nodal_domains",
      [](const Graph& g, const Vector& f) {
        return count_strong_nodal_domains(f, g);
      },
      py::arg("graph"), py::arg("signal"));
  m.def(
      "is_bipartition_split",
      [](const Graph& g, const VertexMask& mask) {
        return is_bipartition_split(mask, g);
      },
      py::arg("graph"), py::arg("mask"));

  m.def("kron_reduce", &kron_reduce, py::arg("laplacian"), py::arg("mask"));
  m.def("graph_from_laplacian", &graph_from_laplacian, py::arg("laplacian"));
  m.def("effective_resistance", &effective_resistance, py::arg("laplacian"),
        py::arg("i"), py::arg("j"));
  m.def(
      "spectral_sparsify",
      [](const Graph& g, std::optional<Index> q, double c, std::uint64_t seed) {
        auto r = spectral_sparsify(g, make_sparsify_cfg(q, c, seed));
        return py::make_tuple(r.graph, r.repaired);
      },
      py::arg("graph"), py::arg("q") = std::nullopt, py::arg("c") = 4.0,
      py::arg("seed") = 0);
  m.def(
      "reduce_pipeline",
      [](const Laplacian& L, const VertexMask& mask, bool sparsify,
         std::optional<Index> q, double c, std::uint64_t seed) {
        auto r = reduce_pipeline(L, mask, make_sparsify_cfg(q, c, seed), sparsify);
        return py::make_tuple(r.laplacian, r.sparsified, r.repaired);
      },
      py::arg("laplacian"), py::arg("mask"), py::arg("sparsify") = false,
      py::arg("q") = std::nullopt, py::arg("c") = 4.0, py::arg("seed") = 0);

  m.def(
      "filter_signal",
      [](const Laplacian& L, const Vector& f, const std::string& spec) {
        auto dec = dense_eigendecomposition(L);
        return apply_filter_exact(f, FilterKernel::parse(spec), dec);
      },
      py::arg("laplacian"), py::arg("signal"), py::arg("kernel"));
  m.def(
      "filter_signal_chebyshev",
      [](const Laplacian& L, const Vector& f, const std::string& spec, int order,
         std::optional<double> bound) {
        auto kernel = FilterKernel::parse(spec);
        return apply_filter_chebyshev(f, kernel, L, order, resolve_bound(L, bound));
      },
      py::arg("laplacian"), py::arg("signal"), py::arg("kernel"),
      py::arg("order") = 50, py::arg("bound") = std::nullopt);

  m.def(
      "interpolate_signal",
      [](const Laplacian& L, const VertexMask& mask, const Vector& f_kept,
         double epsilon) {
        auto sp = fit_spline(f_kept, L, mask, epsilon);
        return interpolate(sp, L);
      },
      py::arg("laplacian"), py::arg("mask"), py::arg("values_on_kept"),
      py::arg("epsilon"));

  m.def(
      "analyze",
      [](const Vector& x, const Laplacian& L, Index levels,
         const std::string& filter, double epsilon, bool sparsify,
         std::optional<Index> q, double c, std::uint64_t seed,
         Index exact_filter_threshold, int chebyshev_order) {
        AnalyzeConfig cfg;
        cfg.filter = FilterKernel::parse(filter);
        cfg.epsilon = epsilon;
        cfg.sparsify = sparsify;
        cfg.sparsify_cfg = make_sparsify_cfg(q, c, seed);
        cfg.seed = seed;
        cfg.exact_filter_threshold = exact_filter_threshold;
        cfg.chebyshev_order = chebyshev_order;
        return analyze(x, L, levels, cfg);
      },
      py::arg("signal"), py::arg("laplacian"), py::arg("levels"),
      py::arg("filter") = "green:0.5", py::arg("epsilon") = 0.5,
      py::arg("sparsify") = false, py::arg("q") = std::nullopt,
      py::arg("c") = 4.0, py::arg("seed") = 0,
      py::arg("exact_filter_threshold") = 2000, py::arg("chebyshev_order") = 50);
  m.def(
      "synthesize",
      [](const PyramidOutput& p, const Laplacian& L, bool least_squares,
         Index max_iters, double tol, bool landweber) {
        LsOptions opts;
        opts.solver = landweber ? LsOptions::Solver::landweber
                                : LsOptions::Solver::normal_cg;
        opts.tol = tol;
        opts.max_iters = max_iters;
        auto mode = least_squares ? SynthesisMode::leastsquares : SynthesisMode::direct;
        return synthesize(p, L, mode, opts);
      },
      py::arg("pyramid"), py::arg("laplacian"), py::arg("least_squares") = false,
      py::arg("max_iters") = 0, py::arg("tol") = 1e-8,
      py::arg("landweber") = false);
  m.def("threshold_coefficients", &threshold_coefficients, py::arg("pyramid"),
        py::arg("keep_count"));
  m.def("redundancy", &redundancy, py::arg("pyramid"));

  m.def("synthetic_signal", &synthetic_signal, py::arg("spec"), py::arg("graph"),
        py::arg("laplacian"), py::arg("seed") = 0);

  m.def("read_graph", &read_graph, py::arg("path"));
  m.def(
      "write_graph",
      [](const Graph& g, const std::string& path) { write_graph(path, g); },
      py::arg("graph"), py::arg("path"));
}
