#pragma once

#include <string>
#include <vector>

namespace lmg {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool points_only = false;  // scatter instead of polyline
};

struct SvgOptions {
  int width = 880;
  int height = 560;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

// Self-contained SVG line/scatter plot: axes, tick labels, legend. Non-finite
// samples (and non-positive ones on log axes) are dropped per series. Plots
// are rendered from already-serialized tables; they never feed back into
// computations.
std::string render_svg_plot(const std::vector<SvgSeries>& series, const SvgOptions& opt);

}  // namespace lmg
