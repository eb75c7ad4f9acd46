#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cavspdc::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // NaN breaks the line, +inf is clipped to the top edge
  bool dashed = false;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  double x_scale = 1.0;  // data are multiplied by these before drawing
  double y_scale = 1.0;
  std::vector<Series> series;
  std::vector<double> hlines;  // in display units
};

struct Plot {
  std::string title;
  std::vector<Panel> panels;
  int columns = 1;
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// Display scale and unit for a frequency range in Hz (kHz ... THz).
std::pair<double, std::string> frequency_unit(double max_abs_hz);

std::string render(const Plot& plot);

}  // namespace cavspdc::svg
