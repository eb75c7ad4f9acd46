#include "cavspdc/figures.hpp"

#include <cmath>
#include <limits>

#include "cavspdc/error.hpp"

namespace cavspdc {

namespace {

Scenario variant(std::string_view builtin, const FigureOptions& o, const PmType& pm,
                 std::vector<SweepAxis> axes, std::vector<std::string> outputs) {
  Scenario s = builtin_scenario(builtin, o.material);
  s.pm = pm;
  s.axes = std::move(axes);
  s.outputs = std::move(outputs);
  s.columns = expand_outputs(s.outputs);
  return s;
}

SweepAxis axis(const char* path, double start, double stop, std::size_t points) {
  return {path, start, stop, points};
}

std::vector<double> values(const Column& c) {
  std::vector<double> v;
  v.reserve(c.cells.size());
  for (const auto& cell : c.cells) {
    switch (cell.status) {
      case CellStatus::Ok: v.push_back(cell.value); break;
      case CellStatus::Infinite: v.push_back(std::numeric_limits<double>::infinity()); break;
      case CellStatus::Error: v.push_back(std::numeric_limits<double>::quiet_NaN()); break;
    }
  }
  return v;
}

svg::Series series(const SweepResult& t, const std::string& x, const std::string& y,
                   std::string label, bool dashed = false) {
  return {std::move(label), values(t.column(x)), values(t.column(y)), dashed};
}

double max_finite(const svg::Panel& p) {
  double m = 0.0;
  for (const auto& s : p.series)
    for (double v : s.y)
      if (std::isfinite(v)) m = std::max(m, std::abs(v));
  return m;
}

void frequency_axis(svg::Panel& p, const std::string& what) {
  auto [scale, unit] = svg::frequency_unit(max_finite(p));
  p.y_scale = scale;
  p.y_label = what + " (" + unit + ")";
}

SweepResult merge(const std::vector<std::pair<std::string, SweepResult>>& parts) {
  SweepResult out;
  out.axes = parts.front().second.axes;
  out.provenance = parts.front().second.provenance;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    // keep the scenario hash of every contributing scenario
    for (const auto& [k, v] : parts[i].second.provenance)
      if (k == "scenario_hash") out.provenance.emplace_back(parts[i].first + "scenario_hash", v);
  }
  for (const auto& [prefix, r] : parts) out.append_columns(r, prefix);
  return out;
}

std::vector<std::pair<std::string, std::string>> base_provenance(const FigureOptions& o) {
  const auto s = builtin_scenario("non-degenerate", o.material);
  auto p = provenance_for(s);
  p.erase(p.begin() + 1, p.begin() + 3);  // figure-level tables are not scenario sweeps
  return p;
}

Figure fig2b(const FigureOptions& o) {
  Figure f{"2b", {}, {}};
  f.table.provenance = base_provenance(o);
  Column x{"ratio", "1", {}}, y{"fidelity", "1", {}};
  const std::size_t n = std::max<std::size_t>(o.points, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = i + 1 == n ? 5.0 : 0.25 + (5.0 - 0.25) * static_cast<double>(i) / static_cast<double>(n - 1);
    x.cells.push_back(Cell::ok(r));
    y.cells.push_back(Cell::ok(fidelity_for_ratio(r)));
  }
  f.table.axes.push_back(std::move(x));
  f.table.columns.push_back(std::move(y));
  svg::Panel p{"Single-crystal fidelity", "cluster spacing / SPDC bandwidth", "fidelity", false, 1.0, 1.0,
               {series(f.table, "ratio", "fidelity", "fidelity")}, {0.9}};
  f.plot = {"Fig. 2b", {p}, 1, f.table.provenance};
  return f;
}

Figure length_figure(const char* id, std::string_view scen, const FigureOptions& o) {
  auto ax = axis("source.total_length_m", 0.005, 0.030, o.points);
  const bool degenerate = scen == "near-degenerate";
  auto t2 = run_sweep(variant(scen, o, PmType::type_ii(), {ax}, {"bandwidth", "cluster1"}), {o.workers});
  // type-0 near degeneracy needs the second-order expansions
  auto t0 = degenerate ? run_sweep(variant(scen, o, PmType::type0(), {ax}, {"bandwidth_2nd", "cluster1_2nd"}),
                                   {o.workers})
                       : run_sweep(variant(scen, o, PmType::type0(), {ax}, {"bandwidth", "cluster1"}), {o.workers});
  Figure f{id, merge({{"type_ii.", t2}, {"type_0.", t0}}), {}};
  const std::string bw0 = degenerate ? "type_0.bandwidth1_2nd" : "type_0.bandwidth1";
  const std::string cl0 = degenerate ? "type_0.cluster1_2nd" : "type_0.cluster1";
  svg::Panel p{std::string(scen) + ", ratio 0.4", "l1 + l2 (mm)", "", true, 1e3, 1.0,
               {series(f.table, "total_length_m", "type_ii.cluster1", "type II cluster"),
                series(f.table, "total_length_m", "type_ii.bandwidth1", "type II bandwidth", true),
                series(f.table, "total_length_m", cl0, "type 0 cluster"),
                series(f.table, "total_length_m", bw0, "type 0 bandwidth", true)},
               {}};
  frequency_axis(p, "frequency");
  f.plot = {std::string("Fig. ") + id, {p}, 1, f.table.provenance};
  return f;
}

Figure ratio_figure(const char* id, std::string_view scen, const PmType& pm, const FigureOptions& o) {
  auto ax = axis("source.length_ratio", 0.05, 0.95, o.points);
  Figure f{id, run_sweep(variant(scen, o, pm, {ax}, {"bandwidth", "cluster1", "cluster2", "joint"}), {o.workers}),
           {}};
  svg::Panel p{std::string(scen) + ", " + std::string(to_string(pm.kind)) + ", l1 + l2 = 10 mm",
               "l1 / (l1 + l2)", "", true, 1.0, 1.0,
               {series(f.table, "length_ratio", "joint", "joint cluster"),
                series(f.table, "length_ratio", "cluster1", "cluster 1"),
                series(f.table, "length_ratio", "cluster2", "cluster 2"),
                series(f.table, "length_ratio", "bandwidth1", "bandwidth 1", true),
                series(f.table, "length_ratio", "bandwidth2", "bandwidth 2", true)},
               {}};
  frequency_axis(p, "frequency");
  f.plot = {std::string("Fig. ") + id, {p}, 1, f.table.provenance};
  return f;
}

Figure fig4d(const FigureOptions& o) {
  auto ax = axis("source.delay_m", 0.0, 1e-3, o.points);
  Figure f{"4d",
           run_sweep(variant("non-degenerate", o, PmType::type_ii(), {ax},
                             {"bandwidth", "cluster1", "cluster2", "fidelity_bell"}),
                     {o.workers}),
           {}};
  svg::Panel p{"non-degenerate, type-ii, ratio 0.4", "path delay (um)", "", true, 1e6, 1.0,
               {series(f.table, "delay_m", "cluster1", "cluster 1"),
                series(f.table, "delay_m", "cluster2", "cluster 2"),
                series(f.table, "delay_m", "bandwidth1", "bandwidth 1", true),
                series(f.table, "delay_m", "bandwidth2", "bandwidth 2", true)},
               {}};
  frequency_axis(p, "frequency");
  svg::Panel q{"Bell-state fidelity", "path delay (um)", "fidelity", false, 1e6, 1.0,
               {series(f.table, "delay_m", "fidelity_bell", "psi-minus")}, {0.93}};
  f.plot = {"Fig. 4d", {p, q}, 2, f.table.provenance};
  return f;
}

Figure fig5(const FigureOptions& o) {
  Figure f{"5", {}, {}};
  f.table.provenance = base_provenance(o);
  const double widths[] = {1e6, 2e6, 4e6, 10e6};
  Column x{"L_eff", "m", {}};
  std::vector<Column> cols;
  for (double w : widths) cols.push_back({"required_finesse_" + format_number(w * 1e-6) + "MHz", "1", {}});
  const std::size_t n = std::max<std::size_t>(o.points, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = i + 1 == n ? 0.2 : 0.01 + (0.2 - 0.01) * static_cast<double>(i) / static_cast<double>(n - 1);
    x.cells.push_back(Cell::ok(l));
    for (std::size_t k = 0; k < cols.size(); ++k)
      cols[k].cells.push_back(Cell::ok(required_finesse(metres(l), hertz(widths[k]))));
  }
  f.table.axes.push_back(std::move(x));
  f.table.columns = std::move(cols);
  svg::Panel p{"Finesse for a target linewidth", "cavity length (mm)", "finesse", true, 1e3, 1.0, {}, {}};
  for (std::size_t k = 0; k < 4; ++k)
    p.series.push_back(series(f.table, "L_eff", f.table.columns[k].name,
                              format_number(widths[k] * 1e-6) + " MHz"));
  f.plot = {"Fig. 5", {p}, 1, f.table.provenance};
  return f;
}

Figure fig6(const FigureOptions& o) {
  Figure f{"6", {}, {}};
  f.table.provenance = base_provenance(o);
  const double refl[] = {0.999, 0.9995, 0.9998};
  Column x{"eta", "1", {}};
  std::vector<Column> cols;
  for (double r : refl) cols.push_back({"linewidth_R" + format_number(r), "Hz", {}});
  const std::size_t n = std::max<std::size_t>(o.points, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double eta = i + 1 == n ? 0.05 : 0.05 * static_cast<double>(i) / static_cast<double>(n - 1);
    x.cells.push_back(Cell::ok(eta));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      CavitySpec c;
      c.R1 = c.R2 = refl[k];
      c.eta = eta;
      c.effective_length = millimetres(53.0);
      cols[k].cells.push_back(Cell::ok(linewidth(c).si()));
    }
  }
  f.table.axes.push_back(std::move(x));
  f.table.columns = std::move(cols);
  svg::Panel p{"Linewidth vs intracavity loss, L_eff = 53 mm", "intracavity loss (%)", "linewidth (MHz)",
               false, 100.0, 1e-6, {}, {}};
  for (std::size_t k = 0; k < 3; ++k)
    p.series.push_back(series(f.table, "eta", f.table.columns[k].name, "R = " + format_number(refl[k])));
  f.plot = {"Fig. 6", {p}, 1, f.table.provenance};
  return f;
}

Figure fig7(const FigureOptions& o) {
  auto ax = axis("source.length_ratio", 0.05, 0.95, o.points);
  struct Part {
    const char* prefix;
    const char* scen;
    PmType pm;
    const char* title;
  };
  const Part parts[] = {{"near_type_ii.", "near-degenerate", PmType::type_ii(), "near-degenerate, type II"},
                        {"non_type_ii.", "non-degenerate", PmType::type_ii(), "non-degenerate, type II"},
                        {"near_type_0.", "near-degenerate", PmType::type0(), "near-degenerate, type 0"},
                        {"non_type_0.", "non-degenerate", PmType::type0(), "non-degenerate, type 0"}};
  std::vector<std::pair<std::string, SweepResult>> tables;
  for (const auto& p : parts)
    tables.emplace_back(p.prefix, run_sweep(variant(p.scen, o, p.pm, {ax}, {"cluster1", "cluster1_2nd"}),
                                            {o.workers}));
  Figure f{"7", merge(tables), {}};
  std::vector<svg::Panel> panels;
  for (const auto& p : parts) {
    svg::Panel panel{p.title, "l1 / (l1 + l2)", "", true, 1.0, 1.0,
                     {series(f.table, "length_ratio", std::string(p.prefix) + "cluster1", "first order"),
                      series(f.table, "length_ratio", std::string(p.prefix) + "cluster1_2nd", "second order",
                             true)},
                     {}};
    frequency_axis(panel, "cluster spacing");
    panels.push_back(std::move(panel));
  }
  f.plot = {"Fig. 7", std::move(panels), 2, f.table.provenance};
  return f;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"2b", "3a", "3b", "4a", "4b", "4c", "4d", "5", "6", "7"};
  return ids;
}

Figure make_figure(std::string_view id, const FigureOptions& o) {
  Figure f;
  if (id == "2b") f = fig2b(o);
  else if (id == "3a") f = length_figure("3a", "near-degenerate", o);
  else if (id == "3b") f = ratio_figure("3b", "near-degenerate", PmType::type_ii(), o);
  else if (id == "4a") f = length_figure("4a", "non-degenerate", o);
  else if (id == "4b") f = ratio_figure("4b", "non-degenerate", PmType::type_ii(), o);
  else if (id == "4c") f = ratio_figure("4c", "non-degenerate", PmType::type0(), o);
  else if (id == "4d") f = fig4d(o);
  else if (id == "5") f = fig5(o);
  else if (id == "6") f = fig6(o);
  else if (id == "7") f = fig7(o);
  else throw Error(Errc::UnknownFigure, "unknown figure '" + std::string(id) + "'");
  f.table.provenance.emplace(f.table.provenance.begin() + 1, "figure", std::string(id));
  f.plot.provenance = f.table.provenance;
  return f;
}

FigureFiles reproduce_figure(std::string_view id, const std::filesystem::path& out_dir,
                             const FigureOptions& options) {
  const auto f = make_figure(id, options);
  const std::string stem = "fig" + std::string(id);
  FigureFiles files{out_dir / (stem + (options.format == TableFormat::Csv ? ".csv" : ".json")),
                    out_dir / (stem + ".svg")};
  write_table(f.table, files.table, options.format);
  write_text(files.svg, svg::render(f.plot));
  return files;
}

}  // namespace cavspdc
