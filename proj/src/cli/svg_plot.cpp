#include "svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tentlab/tentlab.h"

namespace tentlab::cli {

namespace {

constexpr double width = 800.0;
constexpr double height = 500.0;
constexpr double left = 70.0;
constexpr double right = 20.0;
constexpr double top = 20.0;
constexpr double bottom = 50.0;
constexpr int ticks = 5;

std::string fixed2(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

std::string tick_label(double v) {
  if (std::fabs(v) < 1e-300) v = 0.0;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, ptr);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Cells hold backend-serialized scalars ("0.5", "6/13", long decimals); the
// library parses them with correct rounding to binary64.
double numeric_cell(const std::string& text, const std::string& column) {
  tl_scalar* s = nullptr;
  if (tl_scalar_parse(text.c_str(), tl_backend{TL_BINARY64, 0}, &s) != TL_OK)
    throw std::invalid_argument("column '" + column + "' is not numeric: '" + text + "'");
  double v = tl_scalar_value(s);
  tl_scalar_free(s);
  return v;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range range_of(const std::vector<double>& v) {
  if (v.empty()) return {};
  auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  Range r{*mn, *mx};
  if (r.hi - r.lo < 1e-300) {
    r.lo -= 0.5;
    r.hi += 0.5;
  }
  return r;
}

}  // namespace

PlotStyle parse_style(const std::string& name) {
  if (name == "line") return PlotStyle::line;
  if (name == "scatter") return PlotStyle::scatter;
  throw std::invalid_argument("plot style must be line or scatter");
}

std::string render_plot(const TableFile& table, PlotStyle style, std::size_t x_col, std::size_t y_col) {
  if (x_col >= table.header.size() || y_col >= table.header.size())
    throw std::invalid_argument("plot column out of range");
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(table.rows.size());
  ys.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    xs.push_back(numeric_cell(row[x_col], table.header[x_col]));
    ys.push_back(numeric_cell(row[y_col], table.header[y_col]));
  }
  const Range rx = range_of(xs);
  const Range ry = range_of(ys);
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - rx.lo) / (rx.hi - rx.lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - ry.lo) / (ry.hi - ry.lo) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  // axes
  svg += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top + plot_h) + "\" x2=\"" + fixed2(left + plot_w) +
         "\" y2=\"" + fixed2(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed2(left) + "\" y1=\"" + fixed2(top) + "\" x2=\"" + fixed2(left) + "\" y2=\"" +
         fixed2(top + plot_h) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= ticks; ++i) {
    double fx = rx.lo + (rx.hi - rx.lo) * i / ticks;
    double fy = ry.lo + (ry.hi - ry.lo) * i / ticks;
    svg += "<text x=\"" + fixed2(px(fx)) + "\" y=\"" + fixed2(top + plot_h + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + tick_label(fx) + "</text>\n";
    svg += "<text x=\"" + fixed2(left - 6) + "\" y=\"" + fixed2(py(fy) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + tick_label(fy) + "</text>\n";
  }
  svg += "<text x=\"" + fixed2(left + plot_w / 2) + "\" y=\"" + fixed2(height - 10) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + escape_xml(table.header[x_col]) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fixed2(top + plot_h / 2) + "\" font-size=\"13\" text-anchor=\"middle\" " +
         "transform=\"rotate(-90 16 " + fixed2(top + plot_h / 2) + ")\">" + escape_xml(table.header[y_col]) +
         "</text>\n";

  if (style == PlotStyle::line && !xs.empty()) {
    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) svg.push_back(' ');
      svg += fixed2(px(xs[i])) + "," + fixed2(py(ys[i]));
    }
    svg += "\"/>\n";
  } else if (style == PlotStyle::scatter) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      svg += "<circle cx=\"" + fixed2(px(xs[i])) + "\" cy=\"" + fixed2(py(ys[i])) +
             "\" r=\"1.5\" fill=\"steelblue\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace tentlab::cli
