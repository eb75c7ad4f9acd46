#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cavspdc/svg_plot.hpp"
#include "cavspdc/sweep.hpp"

namespace cavspdc {

struct FigureOptions {
  unsigned workers = 1;
  MaterialPtr material;  // null: built-in default
  std::size_t points = 200;
  TableFormat format = TableFormat::Csv;
};

struct Figure {
  std::string id;
  SweepResult table;
  svg::Plot plot;
};

struct FigureFiles {
  std::filesystem::path table;
  std::filesystem::path svg;
};

/// 2b 3a 3b 4a 4b 4c 4d 5 6 7
const std::vector<std::string>& figure_ids();
/// Throws UnknownFigure.
Figure make_figure(std::string_view id, const FigureOptions& options = {});
/// Writes fig<id>.csv (or .json) and fig<id>.svg into out_dir.
FigureFiles reproduce_figure(std::string_view id, const std::filesystem::path& out_dir,
                             const FigureOptions& options = {});

}  // namespace cavspdc
