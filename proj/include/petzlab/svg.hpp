#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "petzlab/csv.hpp"

namespace petzlab {

//=========================================================================
// Minimal static line plots
//=========================================================================

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Writes a self-contained SVG line plot: axes, tick labels, one polyline
// per series, legend when labels are present.
inline void write_line_plot(const std::string &path, const std::string &title,
                            const std::string &xlabel,
                            const std::string &ylabel,
                            const std::vector<PlotSeries> &series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");

  const double width = 720.0, height = 480.0;
  const double ml = 72.0, mr = 24.0, mt = 40.0, mb = 56.0;
  const double inner_w = width - ml - mr;
  const double inner_h = height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto &s : series)
    for (const auto &[x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double ypad = 0.04 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * inner_w;
  };
  const auto py = [&](double y) {
    return mt + (ymax - y) / (ymax - ymin) * inner_h;
  };

  static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const std::size_t ncolors = sizeof(palette) / sizeof(palette[0]);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title
      << "</text>\n";

  // Axes box and ticks.
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << inner_w
      << "\" height=\"" << inner_h
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    out << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + inner_h << "\" x2=\""
        << px(fx) << "\" y2=\"" << mt + inner_h + 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(fx) << "\" y=\"" << mt + inner_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << format_number(fx) << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
        << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << format_number(fy) << "</text>\n";
  }
  out << "<text x=\"" << ml + inner_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xlabel << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + inner_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << mt + inner_h / 2 << ")\">" << ylabel << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto &s = series[si];
    if (s.points.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << palette[si % ncolors]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto &[x, y] : s.points)
      out << px(x) << "," << py(y) << " ";
    out << "\"/>\n";
  }

  // Legend (skip when there is a single unlabeled series).
  bool any_label = false;
  for (const auto &s : series)
    if (!s.label.empty()) any_label = true;
  if (any_label) {
    double ly = mt + 14.0;
    for (std::size_t si = 0; si < series.size(); ++si) {
      if (series[si].label.empty()) continue;
      out << "<line x1=\"" << ml + inner_w - 150 << "\" y1=\"" << ly
          << "\" x2=\"" << ml + inner_w - 125 << "\" y2=\"" << ly
          << "\" stroke=\"" << palette[si % ncolors]
          << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << ml + inner_w - 118 << "\" y=\"" << ly + 4
          << "\" font-family=\"sans-serif\" font-size=\"11\">"
          << series[si].label << "</text>\n";
      ly += 16.0;
    }
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace petzlab
