#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cavspdc/error.hpp"
#include "cavspdc/scenario.hpp"

namespace cavspdc {

enum class CellStatus { Ok, Infinite, Error };

struct Cell {
  CellStatus status = CellStatus::Ok;
  double value = 0.0;
  Errc error = Errc::InvalidArgument;

  static Cell ok(double v);
  static Cell failed(Errc e) { return {CellStatus::Error, 0.0, e}; }
};

struct Column {
  std::string name;
  std::string unit;
  std::vector<Cell> cells;
};

/// Tabular sweep output. Axis columns come first; every cell carries a status.
struct SweepResult {
  std::vector<Column> axes;
  std::vector<Column> columns;
  std::vector<std::pair<std::string, std::string>> provenance;

  [[nodiscard]] std::size_t rows() const;
  [[nodiscard]] const Column& column(std::string_view name) const;
  /// Appends the columns of `other` (same row count) with a name prefix.
  void append_columns(const SweepResult& other, const std::string& prefix);
};

struct SweepOptions {
  unsigned workers = 1;
};

/// Evaluates every requested quantity on the axis grid (first axis varies slowest).
SweepResult run_sweep(const Scenario& scenario, const SweepOptions& options = {});

/// Single point evaluation with the scenario's outputs.
std::vector<std::pair<OutputColumn, Cell>> evaluate_point(const Scenario& scenario,
                                                          const ScenarioPoint& point);

std::vector<std::pair<std::string, std::string>> provenance_for(const Scenario& scenario);

enum class TableFormat { Csv, Json };
TableFormat parse_format(std::string_view s);
std::string to_csv(const SweepResult& r);
std::string to_json(const SweepResult& r);
std::string format_number(double v);
std::string format_cell(const Cell& c);
void write_table(const SweepResult& r, const std::filesystem::path& file, TableFormat format);
void write_text(const std::filesystem::path& file, const std::string& text);

}  // namespace cavspdc
