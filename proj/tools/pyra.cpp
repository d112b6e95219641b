#include "pyra/downsample.hpp"
#include "pyra/errors.hpp"
#include "pyra/graph.hpp"
#include "pyra/io.hpp"
#include "pyra/pyramid.hpp"
#include "pyra/reduce.hpp"
#include "pyra/signals.hpp"
#include "pyra/svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace pyra;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  bool quiet = false;
};

void info(const GlobalOptions& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

// "--q 20000" or "--q auto:4"
SparsifyConfig parse_sparsify(const std::string& q_spec, std::uint64_t seed) {
  SparsifyConfig cfg;
  cfg.seed = seed;
  if (q_spec.rfind("auto:", 0) == 0) {
    cfg.rule = SparsifyConfig::QRule::scaled;
    try {
      cfg.c = std::stod(q_spec.substr(5));
    } catch (const std::exception&) {
      throw InvalidInputError("bad sample scale in '" + q_spec + "'");
    }
  } else if (q_spec == "auto") {
    cfg.rule = SparsifyConfig::QRule::scaled;
  } else {
    cfg.rule = SparsifyConfig::QRule::explicit_count;
    try {
      cfg.q = std::stoll(q_spec);
    } catch (const std::exception&) {
      throw InvalidInputError("bad sample count '" + q_spec + "'");
    }
  }
  return cfg;
}

Vector load_signal(const std::string& signal_path, const std::string& signal_spec, const Graph& g,
                   const Laplacian& L, std::uint64_t seed) {
  if (!signal_path.empty()) {
    Vector x = read_signal(signal_path);
    if (x.size() != g.num_vertices())
      throw FileFormatError(signal_path + ": signal length does not match the graph");
    return x;
  }
  return synthetic_signal(signal_spec, g, L, seed);
}

double relative_error(const Vector& got, const Vector& want) {
  const double denom = want.norm();
  return denom > 0.0 ? (got - want).norm() / denom : got.norm();
}

std::vector<std::array<double, 2>> layout_for(const Graph& g, std::uint64_t seed) {
  if (g.has_coordinates()) return g.coordinates();
  return spring_layout(g, seed);
}

int run(int argc, char** argv) {
  CLI::App app{"graph multiresolution pyramid toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "random seed shared by all stages");
  app.add_option("--out", global.out, "output file or directory");
  app.add_flag("--quiet", global.quiet, "suppress non-error output");

  // ---- generate ----
  auto* generate = app.add_subcommand("generate", "write a graph of a named family");
  std::string family;
  generate->add_option("family", family, "path|ring|grid|balanced-tree|k-rbg|random-geometric|complete")
      ->required();
  Index gen_n = 0, gen_rows = 0, gen_cols = 0, gen_branching = 2, gen_depth = 1, gen_k = 2;
  bool gen_wrap = false;
  double gen_radius = 0.15;
  generate->add_option("--n", gen_n, "vertex count");
  generate->add_option("--rows", gen_rows, "grid rows");
  generate->add_option("--cols", gen_cols, "grid cols");
  generate->add_flag("--wrap", gen_wrap, "join opposite grid borders");
  generate->add_option("--branching", gen_branching, "tree branching factor");
  generate->add_option("--depth", gen_depth, "tree depth");
  generate->add_option("--k", gen_k, "regular bipartite degree");
  generate->add_option("--radius", gen_radius, "geometric connection radius");

  // ---- downsample ----
  auto* downsample = app.add_subcommand("downsample", "select the kept vertex set");
  std::string ds_graph;
  downsample->add_option("--graph", ds_graph, "edge-list file")->required();

  // ---- reduce ----
  auto* reduce = app.add_subcommand("reduce", "Kron-reduce a graph onto a kept set");
  std::string rd_graph, rd_mask, rd_q = "auto:4";
  bool rd_sparsify = false;
  reduce->add_option("--graph", rd_graph, "edge-list file")->required();
  reduce->add_option("--mask", rd_mask, "mask file (computed from the graph when omitted)");
  reduce->add_flag("--sparsify", rd_sparsify, "sparsify the reduction");
  reduce->add_option("--q", rd_q, "sample count, or auto:<c> for c*N*ln(N)");

  // ---- analyze ----
  auto* analyze_cmd = app.add_subcommand("analyze", "multilevel pyramid analysis");
  std::string an_graph, an_signal, an_signal_spec, an_filter = "green:0.5", an_q = "auto:4";
  Index an_levels = 3;
  double an_epsilon = 0.0;
  bool an_sparsify = false;
  analyze_cmd->add_option("--graph", an_graph, "edge-list file")->required();
  analyze_cmd->add_option("--signal", an_signal, "signal file");
  analyze_cmd->add_option("--signal-spec", an_signal_spec,
                          "synthetic signal: fiedler-sign|poly2-patch|lowpass-noise:<tau>");
  analyze_cmd->add_option("--levels", an_levels, "number of levels");
  analyze_cmd->add_option("--filter", an_filter, "green:<tau>|heat:<t>|ideal-low:<c>");
  analyze_cmd->add_option("--epsilon", an_epsilon, "interpolation regularization")->required();
  analyze_cmd->add_flag("--sparsify", an_sparsify, "sparsify each reduction");
  analyze_cmd->add_option("--q", an_q, "sample count, or auto:<c>");

  // ---- synthesize ----
  auto* synthesize_cmd = app.add_subcommand("synthesize", "reconstruct a signal from a container");
  std::string sy_container, sy_mode = "direct", sy_reference, sy_solver = "cg";
  double sy_tol = 1e-8;
  Index sy_iters = 0;
  synthesize_cmd->add_option("--container", sy_container, "pyramid directory")->required();
  synthesize_cmd->add_option("--mode", sy_mode, "direct|ls");
  synthesize_cmd->add_option("--reference", sy_reference, "signal file to report error against");
  synthesize_cmd->add_option("--ls-solver", sy_solver, "cg|landweber");
  synthesize_cmd->add_option("--ls-tol", sy_tol, "least-squares tolerance");
  synthesize_cmd->add_option("--ls-iters", sy_iters, "least-squares iteration cap");

  // ---- compress ----
  auto* compress = app.add_subcommand("compress", "threshold sweep with both syntheses");
  std::string cp_graph, cp_signal, cp_signal_spec = "poly2-patch", cp_filter = "green:0.5",
              cp_q = "auto:4", cp_keep = "1.0,0.5,0.33,0.2,0.1";
  Index cp_levels = 3;
  double cp_epsilon = 0.0;
  bool cp_sparsify = false;
  compress->add_option("--graph", cp_graph, "edge-list file")->required();
  compress->add_option("--signal", cp_signal, "signal file");
  compress->add_option("--signal-spec", cp_signal_spec, "synthetic signal spec");
  compress->add_option("--levels", cp_levels, "number of levels");
  compress->add_option("--filter", cp_filter, "filter spec");
  compress->add_option("--epsilon", cp_epsilon, "interpolation regularization")->required();
  compress->add_flag("--sparsify", cp_sparsify, "sparsify each reduction");
  compress->add_option("--q", cp_q, "sample count, or auto:<c>");
  compress->add_option("--keep", cp_keep, "comma-separated keep fractions");

  // ---- plot ----
  auto* plot = app.add_subcommand("plot", "render SVG drawings");
  std::string pl_graph, pl_signal, pl_mask, pl_container, pl_report;
  plot->add_option("--graph", pl_graph, "edge-list file");
  plot->add_option("--signal", pl_signal, "signal file to color vertices");
  plot->add_option("--mask", pl_mask, "mask file to mark eliminated vertices");
  plot->add_option("--container", pl_container, "pyramid directory: one SVG per level");
  plot->add_option("--report", pl_report, "compress report: error curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (generate->parsed()) {
    Graph g;
    if (family == "path")
      g = path_graph(gen_n);
    else if (family == "ring")
      g = ring_graph(gen_n);
    else if (family == "grid")
      g = grid_graph(gen_rows, gen_cols, gen_wrap);
    else if (family == "balanced-tree")
      g = balanced_tree_graph(gen_branching, gen_depth);
    else if (family == "k-rbg")
      g = k_regular_bipartite_graph(gen_k, gen_n, global.seed);
    else if (family == "random-geometric")
      g = random_geometric_graph(gen_n, gen_radius, global.seed);
    else if (family == "complete")
      g = complete_graph(gen_n);
    else
      throw InvalidInputError("unknown family '" + family + "'");
    const std::string out = global.out.empty() ? family + ".tsv" : global.out;
    write_graph(out, g);
    info(global, "wrote " + out + ": " + std::to_string(g.num_vertices()) + " vertices, " +
                     std::to_string(g.num_edges()) + " edges");
    return 0;
  }

  if (downsample->parsed()) {
    const Graph g = read_graph(ds_graph);
    const VertexMask mask = select_largest_eigenvector(laplacian(g), global.seed);
    const std::string out = global.out.empty() ? "mask.txt" : global.out;
    write_mask(out, mask);
    info(global, "wrote " + out + ": kept " + std::to_string(mask.num_kept()) + " of " +
                     std::to_string(mask.size()) + " vertices");
    return 0;
  }

  if (reduce->parsed()) {
    const Graph g = read_graph(rd_graph);
    const Laplacian L = laplacian(g);
    VertexMask mask;
    if (rd_mask.empty()) {
      mask = select_largest_eigenvector(L, global.seed);
    } else {
      mask = read_mask(rd_mask);
      if (mask.size() != g.num_vertices())
        throw FileFormatError(rd_mask + ": mask length does not match the graph");
    }
    const SparsifyConfig cfg = parse_sparsify(rd_q, global.seed);
    const ReduceResult result = reduce_pipeline(L, mask, cfg, rd_sparsify);
    Graph reduced = graph_from_laplacian(result.laplacian);
    if (g.has_coordinates()) {
      std::vector<std::array<double, 2>> coords;
      for (Index v : mask.kept()) coords.push_back(g.coordinates()[static_cast<std::size_t>(v)]);
      reduced.set_coordinates(std::move(coords));
    }
    const std::string out = global.out.empty() ? "reduced.tsv" : global.out;
    write_graph(out, reduced, {std::string("repaired=") + (result.repaired ? "true" : "false")});
    info(global, "wrote " + out + ": " + std::to_string(reduced.num_vertices()) + " vertices, " +
                     std::to_string(reduced.num_edges()) + " edges" +
                     (result.repaired ? " (connectivity repaired)" : ""));
    return 0;
  }

  if (analyze_cmd->parsed()) {
    if (an_signal.empty() == an_signal_spec.empty())
      throw InvalidInputError("give exactly one of --signal and --signal-spec");
    const Graph g = read_graph(an_graph);
    const Laplacian L = laplacian(g);
    const Vector x = load_signal(an_signal, an_signal_spec, g, L, global.seed);

    AnalyzeConfig cfg;
    cfg.filter = FilterKernel::parse(an_filter);
    cfg.epsilon = an_epsilon;
    cfg.sparsify = an_sparsify;
    cfg.sparsify_cfg = parse_sparsify(an_q, global.seed);
    cfg.seed = global.seed;
    const PyramidOutput p = analyze(x, L, an_levels, cfg);

    const std::string out = global.out.empty() ? "pyramid" : global.out;
    write_pyramid(out, p, g);

    char buf[128];
    info(global, "wrote " + out);
    std::string sizes = std::to_string(p.n0);
    for (const PyramidLevelRecord& rec : p.levels)
      sizes += " -> " + std::to_string(rec.laplacian_next.n());
    info(global, "level sizes: " + sizes);
    std::snprintf(buf, sizeof(buf), "redundancy: %.6f", redundancy(p));
    info(global, buf);
    for (Index j = 0; j < p.num_levels(); ++j) {
      std::snprintf(buf, sizeof(buf), "level %lld detail energy: %.6g",
                    static_cast<long long>(j),
                    p.levels[static_cast<std::size_t>(j)].prediction_error.squaredNorm());
      info(global, buf);
    }
    std::snprintf(buf, sizeof(buf), "coarsest energy: %.6g", p.coarsest.squaredNorm());
    info(global, buf);
    return 0;
  }

  if (synthesize_cmd->parsed()) {
    const PyramidContainer container = read_pyramid(sy_container);
    const Laplacian L0 = laplacian(container.graphs[0]);
    SynthesisMode mode;
    if (sy_mode == "direct")
      mode = SynthesisMode::direct;
    else if (sy_mode == "ls")
      mode = SynthesisMode::leastsquares;
    else
      throw InvalidInputError("mode must be direct or ls");
    LsOptions opts;
    if (sy_solver == "cg")
      opts.solver = LsOptions::Solver::normal_cg;
    else if (sy_solver == "landweber")
      opts.solver = LsOptions::Solver::landweber;
    else
      throw InvalidInputError("ls solver must be cg or landweber");
    opts.tol = sy_tol;
    opts.max_iters = sy_iters;

    const Vector x = synthesize(container.pyramid, L0, mode, opts);
    const std::string out = global.out.empty() ? "reconstructed.csv" : global.out;
    write_signal(out, x);
    info(global, "wrote " + out);
    if (!sy_reference.empty()) {
      const Vector ref = read_signal(sy_reference);
      if (ref.size() != x.size())
        throw FileFormatError(sy_reference + ": reference length does not match");
      char buf[64];
      std::snprintf(buf, sizeof(buf), "relative error: %.6g", relative_error(x, ref));
      info(global, buf);
    }
    return 0;
  }

  if (compress->parsed()) {
    const Graph g = read_graph(cp_graph);
    const Laplacian L = laplacian(g);
    const Vector x = load_signal(cp_signal, cp_signal_spec, g, L, global.seed);

    AnalyzeConfig cfg;
    cfg.filter = FilterKernel::parse(cp_filter);
    cfg.epsilon = cp_epsilon;
    cfg.sparsify = cp_sparsify;
    cfg.sparsify_cfg = parse_sparsify(cp_q, global.seed);
    cfg.seed = global.seed;
    const PyramidOutput p = analyze(x, L, cp_levels, cfg);
    const Index total = p.total_coefficients();

    std::vector<double> fractions;
    {
      std::string token;
      for (std::size_t pos = 0; pos <= cp_keep.size(); ++pos) {
        if (pos == cp_keep.size() || cp_keep[pos] == ',') {
          if (!token.empty()) {
            try {
              fractions.push_back(std::stod(token));
            } catch (const std::exception&) {
              throw InvalidInputError("bad keep fraction '" + token + "'");
            }
            token.clear();
          }
        } else {
          token += cp_keep[pos];
        }
      }
    }
    if (fractions.empty()) throw InvalidInputError("no keep fractions given");

    const std::string out = global.out.empty() ? "compress_report.tsv" : global.out;
    std::ofstream report(out, std::ios::binary);
    if (!report) throw FileFormatError(out + ": cannot open for writing");
    report << "keep_fraction\tkept_count\tdirect_error\tls_error\n";
    info(global, "keep\tkept\tdirect\tls");
    std::vector<std::array<double, 2>> rows; // (fraction, ls error)
    for (double fraction : fractions) {
      if (!(fraction > 0.0) || fraction > 1.0)
        throw InvalidInputError("keep fractions must lie in (0, 1]");
      const Index keep_count =
          std::max<Index>(1, static_cast<Index>(std::llround(fraction * static_cast<double>(total))));
      const PyramidOutput thresholded = threshold_coefficients(p, keep_count);
      const double direct_err = relative_error(
          synthesize(thresholded, L, SynthesisMode::direct), x);
      const double ls_err = relative_error(
          synthesize(thresholded, L, SynthesisMode::leastsquares), x);
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s\t%lld\t%s\t%s", format_double(fraction).c_str(),
                    static_cast<long long>(keep_count), format_double(direct_err).c_str(),
                    format_double(ls_err).c_str());
      report << buf << "\n";
      std::snprintf(buf, sizeof(buf), "%.3f\t%lld\t%.6g\t%.6g", fraction,
                    static_cast<long long>(keep_count), direct_err, ls_err);
      info(global, buf);
      rows.push_back({fraction, ls_err});
    }
    // keeping more coefficients should never hurt the least-squares error
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b)
        if (rows[a][0] > rows[b][0] && rows[a][1] > rows[b][1] + 1e-9) {
          info(global, "warning: least-squares error is not monotone in the keep fraction");
          a = rows.size();
          break;
        }
    info(global, "wrote " + out);
    return 0;
  }

  if (plot->parsed()) {
    if (!pl_container.empty()) {
      const PyramidContainer container = read_pyramid(pl_container);
      const std::string out_dir = global.out.empty() ? pl_container : global.out;
      std::filesystem::create_directories(out_dir);
      std::vector<std::array<double, 2>> positions = layout_for(container.graphs[0], global.seed);
      for (std::size_t j = 0; j < container.graphs.size(); ++j) {
        const std::string path =
            (std::filesystem::path(out_dir) / ("level_" + std::to_string(j) + ".svg")).string();
        const Vector* signal = nullptr;
        Vector level_signal;
        if (j < container.pyramid.levels.size())
          level_signal = container.pyramid.levels[j].prediction_error;
        else
          level_signal = container.pyramid.coarsest;
        signal = &level_signal;
        const VertexMask* mask =
            j < container.pyramid.levels.size() ? &container.pyramid.levels[j].mask : nullptr;
        write_graph_svg(path, container.graphs[j], positions, signal, mask);
        info(global, "wrote " + path);
        if (j < container.pyramid.levels.size()) {
          std::vector<std::array<double, 2>> next;
          for (Index v : container.pyramid.levels[j].mask.kept())
            next.push_back(positions[static_cast<std::size_t>(v)]);
          positions = std::move(next);
        }
      }
      return 0;
    }
    if (!pl_report.empty()) {
      std::ifstream in(pl_report);
      if (!in) throw FileFormatError(pl_report + ": cannot open");
      std::string line;
      if (!std::getline(in, line)) throw FileFormatError(pl_report + ": empty report");
      std::vector<double> xs;
      std::vector<double> direct_errs, ls_errs;
      double keep, direct_e, ls_e;
      long long kept;
      while (in >> keep >> kept >> direct_e >> ls_e) {
        xs.push_back(keep);
        direct_errs.push_back(direct_e);
        ls_errs.push_back(ls_e);
      }
      if (xs.empty()) throw FileFormatError(pl_report + ": no data rows");
      const std::string out = global.out.empty() ? "report.svg" : global.out;
      write_curves_svg(out, xs, {{"direct", direct_errs}, {"least-squares", ls_errs}},
                       "keep fraction", "relative error");
      info(global, "wrote " + out);
      return 0;
    }
    if (pl_graph.empty())
      throw InvalidInputError("plot needs --graph, --container, or --report");
    const Graph g = read_graph(pl_graph);
    Vector signal;
    const Vector* signal_ptr = nullptr;
    if (!pl_signal.empty()) {
      signal = read_signal(pl_signal);
      if (signal.size() != g.num_vertices())
        throw FileFormatError(pl_signal + ": signal length does not match the graph");
      signal_ptr = &signal;
    }
    VertexMask mask;
    const VertexMask* mask_ptr = nullptr;
    if (!pl_mask.empty()) {
      mask = read_mask(pl_mask);
      if (mask.size() != g.num_vertices())
        throw FileFormatError(pl_mask + ": mask length does not match the graph");
      mask_ptr = &mask;
    }
    const std::string out = global.out.empty() ? "graph.svg" : global.out;
    write_graph_svg(out, g, layout_for(g, global.seed), signal_ptr, mask_ptr);
    info(global, "wrote " + out);
    return 0;
  }

  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CorruptInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
