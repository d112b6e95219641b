#include "pyra/svg.hpp"

#include "pyra/errors.hpp"
#include "pyra/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace pyra {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::ofstream open_svg(const std::string& path, double width, double height) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileFormatError(path + ": cannot open for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

// value in [-1, 1] onto blue-white-red
std::string diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  int r, g, b;
  if (t < 0.0) {
    const double s = t + 1.0; // 0 at deep blue, 1 at white
    r = static_cast<int>(33 + (255 - 33) * s);
    g = static_cast<int>(102 + (255 - 102) * s);
    b = static_cast<int>(172 + (255 - 172) * s);
  } else {
    const double s = t; // 0 at white, 1 at deep red
    r = static_cast<int>(255 + (178 - 255) * s);
    g = static_cast<int>(255 + (24 - 255) * s);
    b = static_cast<int>(255 + (43 - 255) * s);
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

} // namespace

std::vector<std::array<double, 2>> spring_layout(const Graph& g, std::uint64_t seed,
                                                 int iterations) {
  const Index n = g.num_vertices();
  Rng rng(seed);
  std::vector<std::array<double, 2>> pos(static_cast<std::size_t>(n));
  for (auto& p : pos) p = {rng.uniform01(), rng.uniform01()};
  if (n <= 1) return pos;

  const double k = std::sqrt(1.0 / static_cast<double>(n));
  std::vector<std::array<double, 2>> disp(static_cast<std::size_t>(n));
  for (int it = 0; it < iterations; ++it) {
    const double temperature =
        0.1 * (1.0 - static_cast<double>(it) / static_cast<double>(iterations));
    for (auto& d : disp) d = {0.0, 0.0};
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        double dx = pos[static_cast<std::size_t>(i)][0] - pos[static_cast<std::size_t>(j)][0];
        double dy = pos[static_cast<std::size_t>(i)][1] - pos[static_cast<std::size_t>(j)][1];
        double d = std::sqrt(dx * dx + dy * dy);
        if (d < 1e-9) {
          dx = 1e-4 * (static_cast<double>(i % 7) + 1.0);
          dy = 1e-4 * (static_cast<double>(j % 5) + 1.0);
          d = std::sqrt(dx * dx + dy * dy);
        }
        const double force = k * k / d;
        disp[static_cast<std::size_t>(i)][0] += dx / d * force;
        disp[static_cast<std::size_t>(i)][1] += dy / d * force;
        disp[static_cast<std::size_t>(j)][0] -= dx / d * force;
        disp[static_cast<std::size_t>(j)][1] -= dy / d * force;
      }
    for (const Edge& e : g.edges()) {
      double dx = pos[static_cast<std::size_t>(e.i)][0] - pos[static_cast<std::size_t>(e.j)][0];
      double dy = pos[static_cast<std::size_t>(e.i)][1] - pos[static_cast<std::size_t>(e.j)][1];
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d < 1e-9) continue;
      const double force = d * d / k;
      disp[static_cast<std::size_t>(e.i)][0] -= dx / d * force;
      disp[static_cast<std::size_t>(e.i)][1] -= dy / d * force;
      disp[static_cast<std::size_t>(e.j)][0] += dx / d * force;
      disp[static_cast<std::size_t>(e.j)][1] += dy / d * force;
    }
    for (Index i = 0; i < n; ++i) {
      const double dx = disp[static_cast<std::size_t>(i)][0];
      const double dy = disp[static_cast<std::size_t>(i)][1];
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d < 1e-12) continue;
      const double step = std::min(d, temperature);
      pos[static_cast<std::size_t>(i)][0] =
          std::clamp(pos[static_cast<std::size_t>(i)][0] + dx / d * step, 0.0, 1.0);
      pos[static_cast<std::size_t>(i)][1] =
          std::clamp(pos[static_cast<std::size_t>(i)][1] + dy / d * step, 0.0, 1.0);
    }
  }
  return pos;
}

void write_graph_svg(const std::string& path, const Graph& g,
                     const std::vector<std::array<double, 2>>& positions, const Vector* signal,
                     const VertexMask* mask) {
  const Index n = g.num_vertices();
  if (static_cast<Index>(positions.size()) != n)
    throw DimensionMismatchError("positions must cover every vertex");
  if (signal && signal->size() != n) throw DimensionMismatchError("signal/graph size mismatch");
  if (mask && mask->size() != n) throw DimensionMismatchError("mask/graph size mismatch");

  const double size = 600.0;
  const double margin = 40.0;
  double min_x = positions[0][0], max_x = positions[0][0];
  double min_y = positions[0][1], max_y = positions[0][1];
  for (const auto& p : positions) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double span_x = std::max(max_x - min_x, 1e-9);
  const double span_y = std::max(max_y - min_y, 1e-9);
  const auto sx = [&](double x) { return margin + (x - min_x) / span_x * (size - 2 * margin); };
  const auto sy = [&](double y) { return size - margin - (y - min_y) / span_y * (size - 2 * margin); };

  double max_w = 0.0;
  for (const Edge& e : g.edges()) max_w = std::max(max_w, e.w);
  double v_max = 0.0;
  if (signal)
    for (Index i = 0; i < n; ++i) v_max = std::max(v_max, std::abs((*signal)[i]));
  if (v_max == 0.0) v_max = 1.0;

  const double radius = std::clamp(240.0 / static_cast<double>(n), 2.0, 7.0);

  std::ofstream out = open_svg(path, size, size);
  for (const Edge& e : g.edges()) {
    const double width = max_w > 0.0 ? 0.5 + 2.0 * e.w / max_w : 1.0;
    out << "<line x1=\"" << num(sx(positions[static_cast<std::size_t>(e.i)][0])) << "\" y1=\""
        << num(sy(positions[static_cast<std::size_t>(e.i)][1])) << "\" x2=\""
        << num(sx(positions[static_cast<std::size_t>(e.j)][0])) << "\" y2=\""
        << num(sy(positions[static_cast<std::size_t>(e.j)][1]))
        << "\" stroke=\"#999999\" stroke-width=\"" << num(width) << "\"/>\n";
  }
  for (Index i = 0; i < n; ++i) {
    std::string fill = "#444444";
    std::string stroke = "#222222";
    if (signal) fill = diverging_color((*signal)[i] / v_max);
    if (mask && !mask->keep(i)) {
      stroke = signal ? fill : "#888888";
      fill = "white";
    }
    out << "<circle cx=\"" << num(sx(positions[static_cast<std::size_t>(i)][0])) << "\" cy=\""
        << num(sy(positions[static_cast<std::size_t>(i)][1])) << "\" r=\"" << num(radius)
        << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw FileFormatError(path + ": write failed");
}

void write_stem_svg(const std::string& path, const Vector& values, const std::string& label) {
  const double width = 800.0;
  const double height = 300.0;
  const double margin = 40.0;
  const Index n = values.size();
  if (n == 0) throw InvalidInputError("nothing to plot");

  double v_max = 0.0;
  for (Index i = 0; i < n; ++i) v_max = std::max(v_max, std::abs(values[i]));
  if (v_max == 0.0) v_max = 1.0;

  const double base = height - margin;
  const auto px = [&](Index i) {
    return margin + (n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5) *
                        (width - 2 * margin);
  };

  std::ofstream out = open_svg(path, width, height);
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(base) << "\" x2=\""
      << num(width - margin) << "\" y2=\"" << num(base)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  for (Index i = 0; i < n; ++i) {
    const double h = std::abs(values[i]) / v_max * (height - 2 * margin);
    out << "<line x1=\"" << num(px(i)) << "\" y1=\"" << num(base) << "\" x2=\"" << num(px(i))
        << "\" y2=\"" << num(base - h) << "\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n";
  }
  out << "<text x=\"" << num(margin) << "\" y=\"" << num(margin / 2.0)
      << "\" font-family=\"sans-serif\" font-size=\"13\">" << escape(label) << "</text>\n";
  out << "</svg>\n";
  if (!out) throw FileFormatError(path + ": write failed");
}

void write_curves_svg(const std::string& path, const std::vector<double>& xs,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series,
                      const std::string& x_label, const std::string& y_label) {
  if (xs.empty() || series.empty()) throw InvalidInputError("nothing to plot");
  for (const auto& s : series)
    if (s.second.size() != xs.size())
      throw DimensionMismatchError("series length does not match the x axis");

  const double width = 600.0;
  const double height = 400.0;
  const double margin = 50.0;

  double x_min = xs[0], x_max = xs[0];
  for (double x : xs) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
  }
  double y_min = series[0].second[0], y_max = y_min;
  for (const auto& s : series)
    for (double v : s.second) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  const double span_x = std::max(x_max - x_min, 1e-12);
  const double span_y = std::max(y_max - y_min, 1e-12);
  const auto px = [&](double x) { return margin + (x - x_min) / span_x * (width - 2 * margin); };
  const auto py = [&](double y) {
    return height - margin - (y - y_min) / span_y * (height - 2 * margin);
  };

  std::ofstream out = open_svg(path, width, height);
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(height - margin) << "\" x2=\""
      << num(width - margin) << "\" y2=\"" << num(height - margin)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << num(margin) << "\" y1=\"" << num(height - margin) << "\" x2=\""
      << num(margin) << "\" y2=\"" << num(margin)
      << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x_min);
  out << "<text x=\"" << num(margin) << "\" y=\"" << num(height - margin / 2.0)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.3g", x_max);
  out << "<text x=\"" << num(width - margin) << "\" y=\"" << num(height - margin / 2.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.3g", y_min);
  out << "<text x=\"" << num(margin - 5.0) << "\" y=\"" << num(height - margin)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof(buf), "%.3g", y_max);
  out << "<text x=\"" << num(margin - 5.0) << "\" y=\"" << num(margin)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
      << "</text>\n";
  out << "<text x=\"" << num(width / 2.0) << "\" y=\"" << num(height - 10.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"" << num(15.0) << "\" y=\"" << num(height / 2.0)
      << "\" transform=\"rotate(-90 15 " << num(height / 2.0)
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i > 0) out << " ";
      out << num(px(xs[i])) << "," << num(py(series[s].second[i]));
    }
    out << "\"/>\n";
    out << "<text x=\"" << num(width - margin - 5.0) << "\" y=\""
        << num(margin + 16.0 * static_cast<double>(s))
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
        << "\">" << escape(series[s].first) << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw FileFormatError(path + ": write failed");
}

} // namespace pyra
