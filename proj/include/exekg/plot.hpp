#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exekg/errors.hpp"

namespace exekg {

enum class PlotKind { Line, Scatter, Bar };

struct Series {
  std::string label;
  std::optional<std::vector<double>> x;  // defaults to 0..n-1 when absent
  std::vector<double> y;
};

struct PlotSpec {
  PlotKind kind = PlotKind::Line;
  std::vector<Series> series;
};

// Plot surface: pixel size plus a subplot grid. Slots fill left-to-right,
// top-to-bottom.
struct Canvas {
  int width_px = 0;
  int height_px = 0;
  int grid_rows = 1;
  int grid_cols = 1;
  std::vector<std::optional<PlotSpec>> slots;
};

// All dimensions positive; width/height capped at 10000.
Canvas create_canvas(int width_px, int height_px, int grid_rows, int grid_cols);

// Fills an empty slot; occupied-slot and out-of-range are errors. The spec is
// validated here: at least one series, every series non-empty with finite
// values and consistent x/y lengths.
Canvas add_plot(Canvas canvas, int slot, PlotSpec plot);

// Deterministic SVG 1.1 document at the canvas pixel size. Each slot is drawn
// in its grid cell with axes, 6 ticks per axis (4 significant digits), a data
// layer (<g class="data">) with one circle per scatter point, one polyline per
// line series, one rect per bar, and a legend. Needs >= 1 filled slot.
std::string render_svg(const Canvas& canvas);

}  // namespace exekg
