#include "cavspdc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cavspdc::svg {

namespace {

constexpr double kPanelW = 460, kPanelH = 320;
constexpr double kMarginL = 72, kMarginR = 16, kMarginT = 34, kMarginB = 48;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3))
    std::snprintf(buf, sizeof buf, "%.0e", v);
  else
    std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  [[nodiscard]] bool valid() const { return lo <= hi; }
};

void render_panel(std::ostringstream& os, const Panel& p, double ox, double oy) {
  Range xr, yr;
  for (const auto& s : p.series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double x = s.x[i] * p.x_scale, y = s.y[i] * p.y_scale;
      if (!std::isfinite(x)) continue;
      xr.add(x);
      if (std::isfinite(y) && (!p.log_y || y > 0)) yr.add(y);
    }
  for (double h : p.hlines)
    if (!p.log_y || h > 0) yr.add(h);
  if (!xr.valid()) xr = {0.0, 1.0};
  if (!yr.valid()) yr = {p.log_y ? 1.0 : 0.0, p.log_y ? 10.0 : 1.0};
  if (xr.hi == xr.lo) xr.hi = xr.lo + 1.0;

  double ylo, yhi;
  if (p.log_y) {
    ylo = std::floor(std::log10(yr.lo));
    yhi = std::ceil(std::log10(yr.hi));
    if (yhi == ylo) yhi += 1.0;
  } else {
    const double pad = yr.hi == yr.lo ? std::max(1e-12, std::abs(yr.hi) * 0.1) : 0.05 * (yr.hi - yr.lo);
    ylo = yr.lo - pad;
    yhi = yr.hi + pad;
    if (yr.lo >= 0.0 && ylo < 0.0) ylo = 0.0;
  }

  const double pw = kPanelW - kMarginL - kMarginR, ph = kPanelH - kMarginT - kMarginB;
  const double px = ox + kMarginL, py = oy + kMarginT;
  auto sx = [&](double x) { return px + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) {
    const double t = p.log_y ? std::log10(y) : y;
    return py + ph - (t - ylo) / (yhi - ylo) * ph;
  };

  os << "<g>\n";
  os << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  os << "<text x=\"" << fmt(px + pw / 2) << "\" y=\"" << fmt(oy + 20)
     << "\" text-anchor=\"middle\" font-size=\"13\">" << esc(p.title) << "</text>\n";
  os << "<text x=\"" << fmt(px + pw / 2) << "\" y=\"" << fmt(oy + kPanelH - 8)
     << "\" text-anchor=\"middle\" font-size=\"12\">" << esc(p.x_label) << "</text>\n";
  os << "<text transform=\"translate(" << fmt(ox + 14) << "," << fmt(py + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << esc(p.y_label) << "</text>\n";

  const double xstep = nice_step(xr.hi - xr.lo);
  for (double t = std::ceil(xr.lo / xstep) * xstep; t <= xr.hi + 1e-9 * xstep; t += xstep) {
    const double X = sx(t);
    os << "<line x1=\"" << fmt(X) << "\" y1=\"" << fmt(py + ph) << "\" x2=\"" << fmt(X) << "\" y2=\""
       << fmt(py + ph + 4) << "\" stroke=\"#000\"/>";
    os << "<text x=\"" << fmt(X) << "\" y=\"" << fmt(py + ph + 16)
       << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(std::abs(t) < 1e-12 * xstep ? 0.0 : t)
       << "</text>\n";
  }
  if (p.log_y) {
    for (double e = ylo; e <= yhi; e += 1.0) {
      const double Y = sy(std::pow(10.0, e));
      os << "<line x1=\"" << fmt(px - 4) << "\" y1=\"" << fmt(Y) << "\" x2=\"" << fmt(px) << "\" y2=\""
         << fmt(Y) << "\" stroke=\"#000\"/>";
      os << "<text x=\"" << fmt(px - 6) << "\" y=\"" << fmt(Y + 3)
         << "\" text-anchor=\"end\" font-size=\"10\">1e" << static_cast<int>(e) << "</text>\n";
    }
  } else {
    const double ystep = nice_step(yhi - ylo);
    for (double t = std::ceil(ylo / ystep) * ystep; t <= yhi + 1e-9 * ystep; t += ystep) {
      const double Y = sy(t);
      os << "<line x1=\"" << fmt(px - 4) << "\" y1=\"" << fmt(Y) << "\" x2=\"" << fmt(px) << "\" y2=\""
         << fmt(Y) << "\" stroke=\"#000\"/>";
      os << "<text x=\"" << fmt(px - 6) << "\" y=\"" << fmt(Y + 3)
         << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(std::abs(t) < 1e-12 * ystep ? 0.0 : t)
         << "</text>\n";
    }
  }

  for (double h : p.hlines) {
    if (p.log_y && h <= 0) continue;
    os << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(sy(h)) << "\" x2=\"" << fmt(px + pw)
       << "\" y2=\"" << fmt(sy(h)) << "\" stroke=\"#888\" stroke-dasharray=\"2,3\"/>\n";
  }

  os << "<clipPath id=\"c" << static_cast<long>(ox) << "_" << static_cast<long>(oy) << "\"><rect x=\""
     << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
     << "\"/></clipPath>\n";
  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const auto& s = p.series[k];
    const char* color = kColors[k % (sizeof kColors / sizeof *kColors)];
    std::string path;
    bool pen = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const double x = s.x[i] * p.x_scale;
      double y = s.y[i] * p.y_scale;
      if (std::isnan(y) || (p.log_y && y <= 0) || y == -std::numeric_limits<double>::infinity()) {
        pen = false;
        continue;
      }
      const double Y = std::isinf(y) ? py : sy(y);
      path += (pen ? " L" : " M") + fmt(sx(x)) + "," + fmt(std::clamp(Y, py - 2, py + ph + 2));
      pen = true;
    }
    os << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " clip-path=\"url(#c" << static_cast<long>(ox)
       << "_" << static_cast<long>(oy) << ")\"/>\n";
    const double ly = py + 14 + 14 * static_cast<double>(k);
    os << "<line x1=\"" << fmt(px + pw - 150) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
       << fmt(px + pw - 126) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
    os << "<text x=\"" << fmt(px + pw - 122) << "\" y=\"" << fmt(ly) << "\" font-size=\"10\">"
       << esc(s.label) << "</text>\n";
  }
  os << "</g>\n";
}

}  // namespace

std::pair<double, std::string> frequency_unit(double max_abs_hz) {
  if (!(max_abs_hz < 1e15) || max_abs_hz >= 1e12) return {1e-12, "THz"};
  if (max_abs_hz >= 1e9) return {1e-9, "GHz"};
  if (max_abs_hz >= 1e6) return {1e-6, "MHz"};
  if (max_abs_hz >= 1e3) return {1e-3, "kHz"};
  return {1.0, "Hz"};
}

std::string render(const Plot& plot) {
  const int cols = std::max(1, plot.columns);
  const int rows = static_cast<int>((plot.panels.size() + cols - 1) / cols);
  const double top = plot.title.empty() ? 0.0 : 28.0;
  const double width = kPanelW * cols, height = top + kPanelH * std::max(rows, 1);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const auto& [k, v] : plot.provenance) os << "<!-- " << k << ": " << esc(v) << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  if (!plot.title.empty())
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
       << esc(plot.title) << "</text>\n";
  for (std::size_t i = 0; i < plot.panels.size(); ++i) {
    const double ox = kPanelW * static_cast<double>(static_cast<int>(i) % cols);
    const double oy = top + kPanelH * static_cast<double>(static_cast<int>(i) / cols);
    render_panel(os, plot.panels[i], ox, oy);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cavspdc::svg
