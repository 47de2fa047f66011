#include "chronsti/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace chronsti {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  if (x != 0.0 && (std::abs(x) >= 1e5 || std::abs(x) < 1e-2))
    std::snprintf(buf, sizeof buf, "%.1e", x);
  else
    std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string escape(const std::string& s) {
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

// "Nice" tick step covering [lo, hi] with at most about six intervals.
double tick_step(double lo, double hi) {
  const double raw = (hi - lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (lo == hi) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
    const double step = tick_step(lo, hi);
    lo = std::floor(lo / step) * step;
    hi = std::ceil(hi / step) * step;
  }
};

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const double ml = 80, mr = 150, mt = 40, mb = 55;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;

  Range xr, yr;
  for (const auto& s : spec.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  if (spec.include_origin) {
    xr.add(0.0);
    yr.add(0.0);
  }
  xr.finish();
  yr.finish();
  auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(spec.width) << "\" height=\"" << num(spec.height)
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<clipPath id=\"plot\"><rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\"/></clipPath>\n";

  if (spec.threshold_slope) {
    // Polygon below the line y = k x, clipped to the plot area.
    const double k = *spec.threshold_slope;
    o << "<polygon clip-path=\"url(#plot)\" fill=\"#dddddd\" points=\"" << num(px(xr.lo)) << ',' << num(py(k * xr.lo))
      << ' ' << num(px(xr.hi)) << ',' << num(py(k * xr.hi)) << ' ' << num(px(xr.hi)) << ',' << num(py(yr.lo) + 1e4)
      << ' ' << num(px(xr.lo)) << ',' << num(py(yr.lo) + 1e4) << "\"/>\n";
  }

  const double xs = tick_step(xr.lo, xr.hi), ys = tick_step(yr.lo, yr.hi);
  for (double x = xr.lo; x <= xr.hi + xs * 1e-9; x += xs) {
    o << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(px(x)) << "\" y2=\""
      << num(mt + ph) << "\" stroke=\"#eeeeee\"/>\n";
    o << "<text x=\"" << num(px(x)) << "\" y=\"" << num(mt + ph + 16) << "\" text-anchor=\"middle\">"
      << tick_label(x) << "</text>\n";
  }
  for (double y = yr.lo; y <= yr.hi + ys * 1e-9; y += ys) {
    o << "<line x1=\"" << num(ml) << "\" y1=\"" << num(py(y)) << "\" x2=\"" << num(ml + pw) << "\" y2=\""
      << num(py(y)) << "\" stroke=\"#eeeeee\"/>\n";
    o << "<text x=\"" << num(ml - 6) << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << tick_label(y)
      << "</text>\n";
  }
  if (xr.lo < 0.0 && xr.hi > 0.0)
    o << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(px(0)) << "\" y2=\""
      << num(mt + ph) << "\" stroke=\"#999999\"/>\n";
  if (yr.lo < 0.0 && yr.hi > 0.0)
    o << "<line x1=\"" << num(ml) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(ml + pw) << "\" y2=\""
      << num(py(0)) << "\" stroke=\"#999999\"/>\n";
  o << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (const auto& s : spec.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.scatter) {
      o << "<g clip-path=\"url(#plot)\" fill=\"" << s.color << "\" fill-opacity=\"0.6\">\n";
      for (std::size_t i = 0; i < n; ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
          o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"2\"/>\n";
      o << "</g>\n";
    } else {
      o << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
      for (std::size_t i = 0; i < n; ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) o << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      o << "\"/>\n";
    }
  }

  double ly = mt + 10;
  for (const auto& s : spec.series) {
    const double lx = ml + pw + 12;
    if (s.scatter)
      o << "<circle cx=\"" << num(lx + 9) << "\" cy=\"" << num(ly - 4) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    else
      o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 18) << "\" y2=\""
        << num(ly - 4) << "\" stroke=\"" << s.color << "\"" << (s.dashed ? " stroke-dasharray=\"5,3\"" : "")
        << "/>\n";
    o << "<text x=\"" << num(lx + 24) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
    ly += 16;
  }

  o << "<text x=\"" << num(ml + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
    << "</text>\n";
  o << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(spec.height - 12) << "\" text-anchor=\"middle\">"
    << escape(spec.xlabel) << "</text>\n";
  o << "<text transform=\"translate(18," << num(mt + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(spec.ylabel) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace chronsti
