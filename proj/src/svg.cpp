#include "lmg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lmg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Largest "round" step (1, 2, 5 times a power of ten) not exceeding the raw
// spacing, the usual axis-tick heuristic.
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(target_ticks - 1, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac < 1.5) {
    step = 1.0;
  } else if (frac < 3.5) {
    step = 2.0;
  } else if (frac < 7.5) {
    step = 5.0;
  } else {
    step = 10.0;
  }
  return step * mag;
}

std::vector<double> ticks_for(double lo, double hi, bool log_axis) {
  std::vector<double> t;
  if (log_axis) {
    // lo/hi already in log10 space; decade ticks, thinned if there are many.
    const int e0 = static_cast<int>(std::ceil(lo - 1e-9));
    const int e1 = static_cast<int>(std::floor(hi + 1e-9));
    const int stride = std::max(1, (e1 - e0) / 8 + 1);
    for (int e = e0; e <= e1; e += stride) t.push_back(static_cast<double>(e));
    return t;
  }
  const double step = nice_step(hi - lo, 6);
  const double first = std::ceil(lo / step - 1e-9) * step;
  for (double v = first; v <= hi + 1e-9 * std::abs(step); v += step) {
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return t;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg_plot(const std::vector<SvgSeries>& series, const SvgOptions& opt) {
  // Transformed, plottable samples per series.
  struct Clean {
    const SvgSeries* src;
    std::vector<double> x, y;
  };
  std::vector<Clean> clean;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const SvgSeries& s : series) {
    Clean c{&s, {}, {}};
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      double x = s.x[i], y = s.y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (opt.log_x) {
        if (!(x > 0.0)) continue;
        x = std::log10(x);
      }
      if (opt.log_y) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      c.x.push_back(x);
      c.y.push_back(y);
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
    if (!c.x.empty()) clean.push_back(std::move(c));
  }
  if (clean.empty()) {
    xlo = ylo = 0.0;
    xhi = yhi = 1.0;
  }
  if (xhi - xlo < 1e-12) {
    xlo -= 0.5;
    xhi += 0.5;
  }
  if (yhi - ylo < 1e-12) {
    ylo -= 0.5;
    yhi += 0.5;
  }
  const double pad_y = 0.05 * (yhi - ylo);
  ylo -= pad_y;
  yhi += pad_y;

  const int ml = 72, mr = 24, mt = opt.title.empty() ? 24 : 44, mb = 52;
  const double pw = opt.width - ml - mr;
  const double ph = opt.height - mt - mb;
  auto px = [&](double x) { return ml + pw * (x - xlo) / (xhi - xlo); };
  auto py = [&](double y) { return mt + ph * (1.0 - (y - ylo) / (yhi - ylo)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
      << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(opt.title) << "</text>\n";
  }

  for (double t : ticks_for(xlo, xhi, opt.log_x)) {
    const double x = px(t);
    svg << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\"" << mt + ph
        << "\" stroke=\"#dddddd\"/>\n";
    const std::string label = opt.log_x ? ("1e" + fmt(t)) : fmt(t);
    svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 18 << "\" text-anchor=\"middle\">" << label
        << "</text>\n";
  }
  for (double t : ticks_for(ylo, yhi, opt.log_y)) {
    const double y = py(t);
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
        << "\" stroke=\"#dddddd\"/>\n";
    const std::string label = opt.log_y ? ("1e" + fmt(t)) : fmt(t);
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << label
        << "</text>\n";
  }
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!opt.x_label.empty()) {
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 12
        << "\" text-anchor=\"middle\">" << xml_escape(opt.x_label) << "</text>\n";
  }
  if (!opt.y_label.empty()) {
    svg << "<text x=\"16\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << xml_escape(opt.y_label) << "</text>\n";
  }

  for (std::size_t s = 0; s < clean.size(); ++s) {
    const char* color = kPalette[s % kPaletteSize];
    if (clean[s].src->points_only) {
      for (std::size_t i = 0; i < clean[s].x.size(); ++i) {
        svg << "<circle cx=\"" << px(clean[s].x[i]) << "\" cy=\"" << py(clean[s].y[i])
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < clean[s].x.size(); ++i) {
        svg << px(clean[s].x[i]) << "," << py(clean[s].y[i]) << " ";
      }
      svg << "\"/>\n";
    }
    const double ly = mt + 16 + 18 * static_cast<double>(s);
    svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 126
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw - 120 << "\" y=\"" << ly + 4 << "\">"
        << xml_escape(clean[s].src->label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lmg
