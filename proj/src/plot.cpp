#include "exekg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace exekg {

namespace {

// Frozen style constants; golden-file tests depend on them.
constexpr double kMargin = 40.0;
constexpr int kFontSize = 12;
constexpr int kTicksPerAxis = 6;
const char* kPalette[8] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v, const char* format = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string fmt_tick(double v) { return fmt(v, "%.4g"); }

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0;
  double hi = 1;
};

// [min, max] of the data with 5% padding; a degenerate span widens to 1.
Range padded(double lo, double hi) {
  double span = hi - lo;
  if (span <= 0) {
    lo -= 0.5;
    hi += 0.5;
    span = 1.0;
  }
  return {lo - 0.05 * span, hi + 0.05 * span};
}

std::vector<double> xs_of(const Series& s) {
  if (s.x) return *s.x;
  std::vector<double> xs(s.y.size());
  for (std::size_t i = 0; i < xs.size(); i++) xs[i] = static_cast<double>(i);
  return xs;
}

void render_slot(std::ostringstream& out, const PlotSpec& plot, double cell_x, double cell_y,
                 double cell_w, double cell_h) {
  double plot_x = cell_x + kMargin;
  double plot_y = cell_y + kMargin;
  double plot_w = std::max(cell_w - 2 * kMargin, 1.0);
  double plot_h = std::max(cell_h - 2 * kMargin, 1.0);

  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool first = true;
  for (const auto& s : plot.series) {
    auto xs = xs_of(s);
    for (std::size_t i = 0; i < s.y.size(); i++) {
      if (first) {
        x_lo = x_hi = xs[i];
        y_lo = y_hi = s.y[i];
        first = false;
      }
      x_lo = std::min(x_lo, xs[i]);
      x_hi = std::max(x_hi, xs[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (plot.kind == PlotKind::Bar) {  // bars grow from zero
    y_lo = std::min(y_lo, 0.0);
    y_hi = std::max(y_hi, 0.0);
  }
  Range xr = padded(x_lo, x_hi);
  Range yr = padded(y_lo, y_hi);

  // Affine, order-preserving data-to-pixel maps.
  auto px = [&](double x) { return plot_x + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return plot_y + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  out << "  <g class=\"axes\" stroke=\"#333333\" fill=\"none\">\n";
  out << "    <line x1=\"" << fmt(plot_x) << "\" y1=\"" << fmt(plot_y + plot_h) << "\" x2=\""
      << fmt(plot_x + plot_w) << "\" y2=\"" << fmt(plot_y + plot_h) << "\"/>\n";
  out << "    <line x1=\"" << fmt(plot_x) << "\" y1=\"" << fmt(plot_y) << "\" x2=\""
      << fmt(plot_x) << "\" y2=\"" << fmt(plot_y + plot_h) << "\"/>\n";
  out << "  </g>\n";

  out << "  <g class=\"ticks\" font-size=\"" << kFontSize << "\" fill=\"#333333\">\n";
  for (int t = 0; t < kTicksPerAxis; t++) {
    double frac = static_cast<double>(t) / (kTicksPerAxis - 1);
    double xv = xr.lo + frac * (xr.hi - xr.lo);
    double yv = yr.lo + frac * (yr.hi - yr.lo);
    out << "    <line stroke=\"#333333\" x1=\"" << fmt(px(xv)) << "\" y1=\""
        << fmt(plot_y + plot_h) << "\" x2=\"" << fmt(px(xv)) << "\" y2=\""
        << fmt(plot_y + plot_h + 4) << "\"/>\n";
    out << "    <text text-anchor=\"middle\" x=\"" << fmt(px(xv)) << "\" y=\""
        << fmt(plot_y + plot_h + 16) << "\">" << fmt_tick(xv) << "</text>\n";
    out << "    <line stroke=\"#333333\" x1=\"" << fmt(plot_x - 4) << "\" y1=\"" << fmt(py(yv))
        << "\" x2=\"" << fmt(plot_x) << "\" y2=\"" << fmt(py(yv)) << "\"/>\n";
    out << "    <text text-anchor=\"end\" x=\"" << fmt(plot_x - 6) << "\" y=\""
        << fmt(py(yv) + 4) << "\">" << fmt_tick(yv) << "</text>\n";
  }
  out << "  </g>\n";

  out << "  <g class=\"data\">\n";
  for (std::size_t si = 0; si < plot.series.size(); si++) {
    const auto& s = plot.series[si];
    const char* color = kPalette[si % 8];
    auto xs = xs_of(s);
    switch (plot.kind) {
      case PlotKind::Line: {
        out << "    <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
            << "points=\"";
        for (std::size_t i = 0; i < s.y.size(); i++)
          out << (i ? " " : "") << fmt(px(xs[i])) << "," << fmt(py(s.y[i]));
        out << "\"/>\n";
        break;
      }
      case PlotKind::Scatter: {
        for (std::size_t i = 0; i < s.y.size(); i++)
          out << "    <circle fill=\"" << color << "\" r=\"3\" cx=\"" << fmt(px(xs[i]))
              << "\" cy=\"" << fmt(py(s.y[i])) << "\"/>\n";
        break;
      }
      case PlotKind::Bar: {
        // One bar per value, series side by side within a unit of x.
        double unit = plot_w / (xr.hi - xr.lo);
        double group_w = unit * 0.8;
        double bar_w = group_w / static_cast<double>(plot.series.size());
        for (std::size_t i = 0; i < s.y.size(); i++) {
          double x0 = px(xs[i]) - group_w / 2 + static_cast<double>(si) * bar_w;
          double y_top = py(std::max(s.y[i], 0.0));
          double y_base = py(std::min(s.y[i], 0.0));
          out << "    <rect fill=\"" << color << "\" x=\"" << fmt(x0) << "\" y=\"" << fmt(y_top)
              << "\" width=\"" << fmt(bar_w) << "\" height=\"" << fmt(y_base - y_top) << "\"/>\n";
        }
        break;
      }
    }
  }
  out << "  </g>\n";

  out << "  <g class=\"legend\" font-size=\"" << kFontSize << "\">\n";
  for (std::size_t si = 0; si < plot.series.size(); si++) {
    double ly = plot_y + 6 + static_cast<double>(si) * (kFontSize + 4);
    out << "    <line stroke=\"" << kPalette[si % 8] << "\" stroke-width=\"6\" x1=\""
        << fmt(plot_x + plot_w - 90) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(plot_x + plot_w - 74) << "\" y2=\"" << fmt(ly) << "\"/>\n";
    out << "    <text fill=\"#333333\" x=\"" << fmt(plot_x + plot_w - 70) << "\" y=\""
        << fmt(ly + 4) << "\">" << escape_xml(plot.series[si].label) << "</text>\n";
  }
  out << "  </g>\n";
}

}  // namespace

Canvas create_canvas(int width_px, int height_px, int grid_rows, int grid_cols) {
  if (width_px <= 0 || height_px <= 0 || grid_rows <= 0 || grid_cols <= 0)
    throw Error("canvas dimensions must be positive");
  if (width_px > 10000 || height_px > 10000)
    throw Error("canvas dimensions exceed the 10000px limit");
  Canvas c;
  c.width_px = width_px;
  c.height_px = height_px;
  c.grid_rows = grid_rows;
  c.grid_cols = grid_cols;
  c.slots.resize(static_cast<std::size_t>(grid_rows) * static_cast<std::size_t>(grid_cols));
  return c;
}

Canvas add_plot(Canvas canvas, int slot, PlotSpec plot) {
  if (slot < 0 || static_cast<std::size_t>(slot) >= canvas.slots.size())
    throw Error("plot slot " + std::to_string(slot) + " is outside the " +
                std::to_string(canvas.grid_rows) + "x" + std::to_string(canvas.grid_cols) +
                " grid");
  if (canvas.slots[static_cast<std::size_t>(slot)])
    throw Error("plot slot " + std::to_string(slot) + " is already occupied");
  if (plot.series.empty()) throw Error("a plot needs at least one series");
  for (const auto& s : plot.series) {
    if (s.y.empty()) throw Error("series '" + s.label + "' has no points");
    if (s.x && s.x->size() != s.y.size())
      throw Error("series '" + s.label + "' has mismatched x/y lengths");
    auto check = [&](double v) {
      if (!std::isfinite(v)) throw Error("series '" + s.label + "' contains a non-finite value");
    };
    for (double v : s.y) check(v);
    if (s.x)
      for (double v : *s.x) check(v);
  }
  canvas.slots[static_cast<std::size_t>(slot)] = std::move(plot);
  return canvas;
}

std::string render_svg(const Canvas& canvas) {
  bool any = std::any_of(canvas.slots.begin(), canvas.slots.end(),
                         [](const auto& s) { return s.has_value(); });
  if (!any) throw Error("cannot render an empty canvas");

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << canvas.width_px
      << "\" height=\"" << canvas.height_px << "\" font-family=\"sans-serif\">\n";
  out << "<rect fill=\"#ffffff\" x=\"0\" y=\"0\" width=\"" << canvas.width_px << "\" height=\""
      << canvas.height_px << "\"/>\n";

  double cell_w = static_cast<double>(canvas.width_px) / canvas.grid_cols;
  double cell_h = static_cast<double>(canvas.height_px) / canvas.grid_rows;
  for (std::size_t i = 0; i < canvas.slots.size(); i++) {
    if (!canvas.slots[i]) continue;
    auto row = static_cast<double>(i / static_cast<std::size_t>(canvas.grid_cols));
    auto col = static_cast<double>(i % static_cast<std::size_t>(canvas.grid_cols));
    out << "<g class=\"cell\">\n";
    render_slot(out, *canvas.slots[i], col * cell_w, row * cell_h, cell_w, cell_h);
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace exekg
