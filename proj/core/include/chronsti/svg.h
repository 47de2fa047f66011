#pragma once

// Dependency-free static SVG charts: lines and scatter on linear axes.

#include <optional>
#include <string>
#include <vector>

namespace chronsti {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool scatter = false;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  std::vector<PlotSeries> series;
  // Draws y = slope·x through the origin and shades the region below it
  // (the cost-effective area of a CE plane).
  std::optional<double> threshold_slope;
  bool include_origin = false;
  double width = 640, height = 420;
};

std::string render_svg(const PlotSpec& spec);

}  // namespace chronsti
