#include "pyra/io.hpp"

#include "pyra/reduce.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pyra {

namespace {

[[noreturn]] void bad_file(const std::string& path, const std::string& what) {
  throw FileFormatError(path + ": " + what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileFormatError(path + ": cannot open for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError(path + ": cannot open");
  return in;
}

double parse_double(const std::string& token, const std::string& path, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  // ERANGE on underflow still yields the correctly rounded subnormal; only
  // overflow is a real parse failure.
  const bool overflow = errno == ERANGE && std::abs(v) == HUGE_VAL;
  if (end == token.c_str() || *end != '\0' || overflow)
    bad_file(path, "bad number '" + token + "' on line " + std::to_string(line_no));
  return v;
}

long long parse_int(const std::string& token, const std::string& path, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0' || errno == ERANGE)
    bad_file(path, "bad integer '" + token + "' on line " + std::to_string(line_no));
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string chomp(std::string line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  return line;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_graph(const std::string& path, const Graph& g,
                 const std::vector<std::string>& extra_comments) {
  std::ofstream out = open_out(path);
  out << "#pyra-graph n=" << g.num_vertices() << "\n";
  for (const std::string& c : extra_comments) out << "#" << c << "\n";
  if (g.has_coordinates()) {
    const auto& coords = g.coordinates();
    for (Index i = 0; i < g.num_vertices(); ++i)
      out << "#coord\t" << i << "\t" << format_double(coords[static_cast<std::size_t>(i)][0])
          << "\t" << format_double(coords[static_cast<std::size_t>(i)][1]) << "\n";
  }
  for (const Edge& e : g.edges())
    out << e.i << "\t" << e.j << "\t" << format_double(e.w) << "\n";
  if (!out) throw FileFormatError(path + ": write failed");
}

Graph read_graph(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 0;

  Index n = -1;
  std::vector<Edge> edges;
  std::vector<std::array<double, 2>> coords;
  std::vector<char> coord_seen;
  Index coord_count = 0;

  while (std::getline(in, line)) {
    ++line_no;
    line = chomp(line);
    if (line.empty()) continue;
    if (n < 0) {
      if (line.rfind("#pyra-graph n=", 0) != 0) bad_file(path, "missing #pyra-graph header");
      const long long parsed = parse_int(line.substr(14), path, line_no);
      if (parsed <= 0) bad_file(path, "vertex count must be positive");
      n = static_cast<Index>(parsed);
      coords.assign(static_cast<std::size_t>(n), {0.0, 0.0});
      coord_seen.assign(static_cast<std::size_t>(n), 0);
      continue;
    }
    if (line[0] == '#') {
      if (line.rfind("#coord\t", 0) == 0) {
        const std::vector<std::string> parts = split_tabs(line.substr(7));
        if (parts.size() != 3) bad_file(path, "bad coordinate line " + std::to_string(line_no));
        const long long idx = parse_int(parts[0], path, line_no);
        if (idx < 0 || idx >= n) bad_file(path, "coordinate vertex out of range");
        coords[static_cast<std::size_t>(idx)] = {parse_double(parts[1], path, line_no),
                                                 parse_double(parts[2], path, line_no)};
        if (!coord_seen[static_cast<std::size_t>(idx)]) {
          coord_seen[static_cast<std::size_t>(idx)] = 1;
          ++coord_count;
        }
      }
      continue;
    }
    const std::vector<std::string> parts = split_tabs(line);
    if (parts.size() != 3) bad_file(path, "expected i<TAB>j<TAB>w on line " + std::to_string(line_no));
    edges.push_back({static_cast<Index>(parse_int(parts[0], path, line_no)),
                     static_cast<Index>(parse_int(parts[1], path, line_no)),
                     parse_double(parts[2], path, line_no)});
  }
  if (n < 0) bad_file(path, "missing #pyra-graph header");

  try {
    Graph g(n, std::move(edges));
    if (coord_count == n) g.set_coordinates(std::move(coords));
    return g;
  } catch (const InvalidInputError& e) {
    bad_file(path, e.what());
  }
}

void write_signal(const std::string& path, const Vector& values) {
  std::ofstream out = open_out(path);
  for (Index i = 0; i < values.size(); ++i) out << format_double(values[i]) << "\n";
  if (!out) throw FileFormatError(path + ": write failed");
}

Vector read_signal(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    line = chomp(line);
    if (line.empty()) continue;
    values.push_back(parse_double(line, path, line_no));
  }
  if (values.empty()) bad_file(path, "no values");
  Vector out(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Index>(i)] = values[i];
  return out;
}

void write_mask(const std::string& path, const VertexMask& mask) {
  std::ofstream out = open_out(path);
  for (Index i = 0; i < mask.size(); ++i) out << (mask.keep(i) ? "1" : "0") << "\n";
  if (!out) throw FileFormatError(path + ": write failed");
}

VertexMask read_mask(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<char> keep;
  while (std::getline(in, line)) {
    ++line_no;
    line = chomp(line);
    if (line.empty()) continue;
    if (line == "1")
      keep.push_back(1);
    else if (line == "0")
      keep.push_back(0);
    else
      bad_file(path, "expected 0 or 1 on line " + std::to_string(line_no));
  }
  if (keep.empty()) bad_file(path, "empty mask");
  return VertexMask(std::move(keep));
}

namespace {

std::string level_flag(bool v) { return v ? "1" : "0"; }

} // namespace

void write_pyramid(const std::string& dir, const PyramidOutput& p, const Graph& g0) {
  if (p.levels.empty()) throw InvalidInputError("pyramid has no levels");
  if (g0.num_vertices() != p.n0) throw DimensionMismatchError("graph/pyramid size mismatch");
  std::filesystem::create_directories(dir);
  const auto at = [&](const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
  };

  const Index j_levels = p.num_levels();
  {
    std::ofstream out = open_out(at("manifest"));
    out << "pyra-pyramid 1\n";
    out << "levels=" << j_levels << "\n";
    out << "n0=" << p.n0 << "\n";
    for (Index j = 0; j < j_levels; ++j) {
      const PyramidLevelRecord& rec = p.levels[static_cast<std::size_t>(j)];
      out << "level=" << j << "\tfilter=" << rec.filter.name
          << "\tepsilon=" << format_double(rec.epsilon)
          << "\texact=" << level_flag(rec.exact_filtering) << "\tcheb_order=" << rec.cheb_order
          << "\tlambda_bound=" << format_double(rec.lambda_max_bound)
          << "\tsparsified=" << level_flag(rec.sparsify.sparsified) << "\tq=" << rec.sparsify.q
          << "\tsparsify_seed=" << rec.sparsify.seed
          << "\trepaired=" << level_flag(rec.sparsify.repaired) << "\n";
    }
    if (!out) throw FileFormatError(at("manifest") + ": write failed");
  }

  write_graph(at("graph_0.tsv"), g0);
  for (Index j = 0; j < j_levels; ++j) {
    const PyramidLevelRecord& rec = p.levels[static_cast<std::size_t>(j)];
    write_mask(at("mask_" + std::to_string(j) + ".txt"), rec.mask);
    write_signal(at("y_" + std::to_string(j) + ".csv"), rec.prediction_error);
    write_graph(at("graph_" + std::to_string(j + 1) + ".tsv"),
                graph_from_laplacian(rec.laplacian_next));
  }
  write_signal(at("x_J.csv"), p.coarsest);
}

PyramidContainer read_pyramid(const std::string& dir) {
  const auto at = [&](const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
  };
  if (!std::filesystem::is_directory(dir))
    throw ContainerCorruptError(dir + ": not a directory");

  const std::string manifest_path = at("manifest");
  if (!std::filesystem::exists(manifest_path))
    throw ContainerCorruptError(dir + ": missing manifest");

  Index j_levels = -1;
  Index n0 = -1;
  struct LevelMeta {
    FilterKernel filter;
    double epsilon = 0.0;
    bool exact = true;
    Index cheb_order = 0;
    double lambda_bound = 0.0;
    SparsifyMeta sparsify;
    bool seen = false;
  };
  std::vector<LevelMeta> metas;
  {
    std::ifstream in = open_in(manifest_path);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line) || chomp(line) != "pyra-pyramid 1")
      throw ContainerCorruptError(manifest_path + ": bad signature");
    ++line_no;
    while (std::getline(in, line)) {
      ++line_no;
      line = chomp(line);
      if (line.empty()) continue;
      if (line.rfind("levels=", 0) == 0) {
        j_levels = static_cast<Index>(parse_int(line.substr(7), manifest_path, line_no));
        if (j_levels < 1) throw ContainerCorruptError(manifest_path + ": bad level count");
        metas.resize(static_cast<std::size_t>(j_levels));
        continue;
      }
      if (line.rfind("n0=", 0) == 0) {
        n0 = static_cast<Index>(parse_int(line.substr(3), manifest_path, line_no));
        continue;
      }
      if (line.rfind("level=", 0) == 0) {
        if (j_levels < 0) throw ContainerCorruptError(manifest_path + ": level before levels=");
        const std::vector<std::string> parts = split_tabs(line);
        const Index j = static_cast<Index>(parse_int(parts[0].substr(6), manifest_path, line_no));
        if (j < 0 || j >= j_levels)
          throw ContainerCorruptError(manifest_path + ": level index out of range");
        LevelMeta& meta = metas[static_cast<std::size_t>(j)];
        meta.seen = true;
        for (std::size_t k = 1; k < parts.size(); ++k) {
          const std::size_t eq = parts[k].find('=');
          if (eq == std::string::npos)
            throw ContainerCorruptError(manifest_path + ": bad field '" + parts[k] + "'");
          const std::string key = parts[k].substr(0, eq);
          const std::string value = parts[k].substr(eq + 1);
          try {
            if (key == "filter")
              meta.filter = FilterKernel::parse(value);
            else if (key == "epsilon")
              meta.epsilon = parse_double(value, manifest_path, line_no);
            else if (key == "exact")
              meta.exact = parse_int(value, manifest_path, line_no) != 0;
            else if (key == "cheb_order")
              meta.cheb_order = static_cast<Index>(parse_int(value, manifest_path, line_no));
            else if (key == "lambda_bound")
              meta.lambda_bound = parse_double(value, manifest_path, line_no);
            else if (key == "sparsified")
              meta.sparsify.sparsified = parse_int(value, manifest_path, line_no) != 0;
            else if (key == "q")
              meta.sparsify.q = static_cast<Index>(parse_int(value, manifest_path, line_no));
            else if (key == "sparsify_seed")
              meta.sparsify.seed = static_cast<std::uint64_t>(
                  std::strtoull(value.c_str(), nullptr, 10));
            else if (key == "repaired")
              meta.sparsify.repaired = parse_int(value, manifest_path, line_no) != 0;
            else
              throw ContainerCorruptError(manifest_path + ": unknown field '" + key + "'");
          } catch (const InvalidInputError& e) {
            throw ContainerCorruptError(manifest_path + ": " + e.what());
          }
        }
        continue;
      }
      throw ContainerCorruptError(manifest_path + ": unrecognized line " + std::to_string(line_no));
    }
  }
  if (j_levels < 1 || n0 < 1) throw ContainerCorruptError(manifest_path + ": incomplete header");
  for (const LevelMeta& meta : metas)
    if (!meta.seen) throw ContainerCorruptError(manifest_path + ": missing level line");

  PyramidContainer container;
  try {
    for (Index j = 0; j <= j_levels; ++j) {
      const std::string path = at("graph_" + std::to_string(j) + ".tsv");
      if (!std::filesystem::exists(path)) throw ContainerCorruptError(path + ": missing");
      container.graphs.push_back(read_graph(path));
    }

    PyramidOutput& p = container.pyramid;
    p.n0 = n0;
    if (container.graphs[0].num_vertices() != n0)
      throw ContainerCorruptError(dir + ": graph_0 does not match n0");

    for (Index j = 0; j < j_levels; ++j) {
      const std::string mask_path = at("mask_" + std::to_string(j) + ".txt");
      const std::string y_path = at("y_" + std::to_string(j) + ".csv");
      if (!std::filesystem::exists(mask_path)) throw ContainerCorruptError(mask_path + ": missing");
      if (!std::filesystem::exists(y_path)) throw ContainerCorruptError(y_path + ": missing");

      PyramidLevelRecord rec;
      const LevelMeta& meta = metas[static_cast<std::size_t>(j)];
      rec.filter = meta.filter;
      rec.epsilon = meta.epsilon;
      rec.exact_filtering = meta.exact;
      rec.cheb_order = meta.cheb_order;
      rec.lambda_max_bound = meta.lambda_bound;
      rec.sparsify = meta.sparsify;
      rec.mask = read_mask(mask_path);
      rec.prediction_error = read_signal(y_path);
      rec.laplacian_next = laplacian(container.graphs[static_cast<std::size_t>(j + 1)]);

      const Index level_n = container.graphs[static_cast<std::size_t>(j)].num_vertices();
      if (rec.mask.size() != level_n)
        throw ContainerCorruptError(mask_path + ": length does not match the level graph");
      if (rec.prediction_error.size() != level_n)
        throw ContainerCorruptError(y_path + ": length does not match the level graph");
      if (rec.laplacian_next.n() != rec.mask.num_kept())
        throw ContainerCorruptError(dir + ": graph_" + std::to_string(j + 1) +
                                    " does not match the kept set of mask_" + std::to_string(j));
      p.levels.push_back(std::move(rec));
    }

    const std::string x_path = at("x_J.csv");
    if (!std::filesystem::exists(x_path)) throw ContainerCorruptError(x_path + ": missing");
    p.coarsest = read_signal(x_path);
    if (p.coarsest.size() != container.graphs.back().num_vertices())
      throw ContainerCorruptError(x_path + ": length does not match the coarsest graph");
  } catch (const FileFormatError& e) {
    throw ContainerCorruptError(e.what());
  }
  return container;
}

} // namespace pyra
