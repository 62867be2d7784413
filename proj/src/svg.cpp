#include "nanowave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nanowave {

namespace {

const char* kPalette[] = {"#1965b0", "#dc050c", "#4eb265", "#882e72",
                          "#f1932d", "#5289c7", "#777777", "#b8221e"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // data range in plot coordinates (log10 if log)
  std::vector<double> ticks;  // tick positions in original units
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

double to_plot(double v, bool log) { return log ? std::log10(v) : v; }

// Tick step of the form {1,2,5}*10^k giving roughly the requested count.
double nice_step(double span, int target) {
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double mant = raw / mag;
  double m = mant <= 1.0 ? 1.0 : mant <= 2.0 ? 2.0 : mant <= 5.0 ? 5.0 : 10.0;
  return m * mag;
}

Axis make_axis(bool log, double data_lo, double data_hi) {
  Axis ax;
  ax.log = log;
  if (!(data_lo <= data_hi)) throw std::domain_error("empty axis range");
  if (!log) {
    if (data_lo == data_hi) {
      double pad = data_lo == 0.0 ? 1.0 : std::fabs(data_lo) * 0.1;
      data_lo -= pad;
      data_hi += pad;
    }
    double step = nice_step(data_hi - data_lo, 5);
    ax.lo = std::floor(data_lo / step) * step;
    ax.hi = std::ceil(data_hi / step) * step;
    for (double t = ax.lo; t <= ax.hi + 0.5 * step; t += step) {
      double tick = std::fabs(t) < 1e-12 * step ? 0.0 : t;
      ax.ticks.push_back(tick);
    }
    return ax;
  }
  double llo = std::log10(data_lo), lhi = std::log10(data_hi);
  if (lhi - llo < 1.0) {
    // Less than a decade: linear ticks placed on the log scale.
    double step = nice_step(data_hi - data_lo, 5);
    double t0 = std::floor(data_lo / step) * step;
    if (t0 <= 0.0) t0 += step;
    for (double t = t0; t <= data_hi + 0.5 * step; t += step) ax.ticks.push_back(t);
    ax.lo = std::log10(std::min(data_lo, ax.ticks.front()));
    ax.hi = std::log10(std::max(data_hi, ax.ticks.back()));
    double pad = 0.02 * (ax.hi - ax.lo + 1e-12);
    ax.lo -= pad;
    ax.hi += pad;
    return ax;
  }
  int d0 = static_cast<int>(std::floor(llo + 1e-9));
  int d1 = static_cast<int>(std::ceil(lhi - 1e-9));
  ax.lo = d0;
  ax.hi = d1;
  int every = 1 + (d1 - d0) / 9;  // thin decade labels on very wide ranges
  for (int d = d0; d <= d1; ++d)
    if ((d - d0) % every == 0) ax.ticks.push_back(std::pow(10.0, d));
  return ax;
}

}  // namespace

void write_svg(std::ostream& os, const SvgChart& chart) {
  if (chart.series.empty()) throw std::domain_error("chart has no series");

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const SvgSeries& s : chart.series) {
    if (s.x.size() != s.y.size()) throw std::domain_error("series x/y length mismatch");
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], chart.log_x) || !usable(s.y[i], chart.log_y)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin) || !std::isfinite(ymin))
    throw std::domain_error("chart has no drawable points");

  Axis xaxis = make_axis(chart.log_x, xmin, xmax);
  Axis yaxis = make_axis(chart.log_y, ymin, ymax);

  const double left = 76, right = 20, top = chart.title.empty() ? 16 : 40, bottom = 48;
  const double w = chart.width, h = chart.height;
  const double pw = w - left - right, ph = h - top - bottom;
  auto px = [&](double v) {
    return left + pw * (to_plot(v, chart.log_x) - xaxis.lo) / (xaxis.hi - xaxis.lo);
  };
  auto py = [&](double v) {
    return top + ph * (1.0 - (to_plot(v, chart.log_y) - yaxis.lo) / (yaxis.hi - yaxis.lo));
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">\n";
  if (!chart.title.empty())
    os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">"
       << escape(chart.title) << "</text>\n";

  // gridlines and ticks
  for (double t : xaxis.ticks) {
    double x = px(t);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(x) << "\" y2=\""
       << fmt(top + ph) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(top + ph + 18)
       << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  for (double t : yaxis.ticks) {
    double y = py(t);
    os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left + pw)
       << "\" y2=\"" << fmt(y) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  }
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"#444\"/>\n";

  if (!chart.x_label.empty())
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">"
       << escape(chart.x_label) << "</text>\n";
  if (!chart.y_label.empty())
    os << "<text x=\"18\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << top + ph / 2 << ")\">" << escape(chart.y_label) << "</text>\n";

  // series
  for (size_t si = 0; si < chart.series.size(); ++si) {
    const SvgSeries& s = chart.series[si];
    std::string color = s.color.empty() ? kPalette[si % kPaletteSize] : s.color;
    std::string path;
    bool pen_down = false;
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], chart.log_x) || !usable(s.y[i], chart.log_y)) {
        pen_down = false;
        continue;
      }
      path += pen_down ? " L " : " M ";
      path += fmt(px(s.x[i])) + " " + fmt(py(s.y[i]));
      pen_down = true;
    }
    if (path.empty()) continue;
    os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.8\"";
    if (s.dashed) os << " stroke-dasharray=\"7 4\"";
    os << "/>\n";
  }

  // legend, top right inside plot
  double ly = top + 16;
  for (size_t si = 0; si < chart.series.size(); ++si) {
    const SvgSeries& s = chart.series[si];
    if (s.label.empty()) continue;
    std::string color = s.color.empty() ? kPalette[si % kPaletteSize] : s.color;
    double lx = left + pw - 178;
    os << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 26)
       << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
    if (s.dashed) os << " stroke-dasharray=\"7 4\"";
    os << "/>\n";
    os << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label)
       << "</text>\n";
    ly += 18;
  }

  os << "</g>\n</svg>\n";
}

std::string render_svg(const SvgChart& chart) {
  std::ostringstream os;
  write_svg(os, chart);
  return os.str();
}

}  // namespace nanowave
