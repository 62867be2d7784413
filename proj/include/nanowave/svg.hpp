#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nanowave {

// One polyline on a chart. Points with non-finite coordinates (or non-positive
// ones on a log axis) split the line into segments rather than being drawn.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;  // CSS color; empty picks from a default palette
  bool dashed = false;
};

struct SvgChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 860;
  int height = 560;
  std::vector<SvgSeries> series;
};

// Renders a self-contained SVG document. Throws std::domain_error when no
// drawable points exist (e.g. all values non-positive on a log axis).
void write_svg(std::ostream& os, const SvgChart& chart);
std::string render_svg(const SvgChart& chart);

}  // namespace nanowave
