#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cavspdc/design_query.hpp"
#include "cavspdc/error.hpp"
#include "cavspdc/figures.hpp"
#include "cavspdc/kernels/comb.hpp"
#include "cavspdc/sweep.hpp"

namespace fs = std::filesystem;
using namespace cavspdc;

namespace {

struct Globals {
  std::string out;
  std::string format = "csv";
  unsigned workers = 1;
  std::string material;
};

struct PointArgs {
  std::string scenario = "non-degenerate";
  std::string pm;
  std::vector<std::string> sets;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::IoError, "cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MaterialPtr material_override(const Globals& g) {
  if (g.material.empty()) return nullptr;
  return std::make_shared<const DispersionModel>(DispersionModel::load(g.material));
}

Scenario resolve_scenario(const std::string& name_or_file, const Globals& g) {
  if (fs::exists(name_or_file)) return load_scenario(name_or_file, MaterialRegistry::builtin(), material_override(g));
  return builtin_scenario(name_or_file, material_override(g));
}

void apply_sets(ScenarioPoint& p, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(Errc::ScenarioValidation, "--set expects path=value, got '" + s + "'");
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
    } catch (const std::logic_error&) {
      throw Error(Errc::ScenarioValidation, s.substr(0, eq) + ": not a number");
    }
    set_parameter(p, s.substr(0, eq), v);
  }
}

void emit(const SweepResult& r, const Globals& g, const std::string& stem) {
  const auto fmt = parse_format(g.format);
  if (g.out.empty()) {
    std::cout << (fmt == TableFormat::Csv ? to_csv(r) : to_json(r));
    return;
  }
  const auto file = fs::path(g.out) / (stem + (fmt == TableFormat::Csv ? ".csv" : ".json"));
  write_table(r, file, fmt);
  std::cerr << "wrote " << file.string() << "\n";
}

// Point commands evaluate a scenario without sweep axes. A failed cell sets the exit status.
int point_command(const PointArgs& a, const Globals& g, std::vector<std::string> outputs, const std::string& stem) {
  Scenario s = resolve_scenario(a.scenario, g);
  if (!a.pm.empty()) s.pm = parse_phase_matching(a.pm);
  apply_sets(s.base, a.sets);
  validate_point(s.base);
  s.axes.clear();
  s.outputs = std::move(outputs);
  s.columns = expand_outputs(s.outputs);
  const auto r = run_sweep(s, {1});
  emit(r, g, stem);
  for (const auto& c : r.columns)
    if (c.cells[0].status == CellStatus::Error) {
      std::cerr << "error[" << to_string(c.cells[0].error) << "]: " << c.name << "\n";
      return is_validation_error(c.cells[0].error) ? 2 : 3;
    }
  return 0;
}

void add_point_options(CLI::App* cmd, PointArgs& a) {
  cmd->add_option("--scenario", a.scenario, "built-in scenario name or scenario file")->capture_default_str();
  cmd->add_option("--pm", a.pm, "phase matching: type-0, type-0-ordinary, type-i, type-ii");
  cmd->add_option("--set", a.sets, "override a parameter, e.g. source.length_ratio=0.3");
}

int run(int argc, char** argv) {
  CLI::App app{"Design calculator for cavity-enhanced two-crystal SPDC entangled-photon sources"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "output directory (default: table on stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--workers", g.workers, "sweep worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--material", g.material, "coefficient file replacing the scenario material")->check(CLI::ExistingFile);

  PointArgs bw, cl, fi;
  auto* bandwidth = app.add_subcommand("bandwidth", "SPDC bandwidths of both crystals");
  add_point_options(bandwidth, bw);
  auto* cluster = app.add_subcommand("cluster", "cluster spacings, second-order spacings and temperature sensitivity");
  add_point_options(cluster, cl);
  auto* fidelity = app.add_subcommand("fidelity", "single-crystal and Bell-state fidelities");
  add_point_options(fidelity, fi);

  PointArgs cv;
  auto* cavity = app.add_subcommand("cavity", "finesse and linewidth");
  add_point_options(cavity, cv);

  std::string sweep_file;
  auto* sweep = app.add_subcommand("sweep", "run the sweep defined in a scenario file");
  sweep->add_option("scenario", sweep_file, "scenario file")->required()->check(CLI::ExistingFile);

  std::string figure_id;
  std::size_t figure_points = 200;
  auto* figure = app.add_subcommand("reproduce-figure", "write the table and SVG plot of a figure");
  figure->add_option("id", figure_id, "2b 3a 3b 4a 4b 4c 4d 5 6 7 or all")->required();
  figure->add_option("--points", figure_points, "grid points per axis")->check(CLI::Range(2, 100000))->capture_default_str();

  std::string constraints_file;
  auto* design = app.add_subcommand("design-query", "grid search for source and cavity parameters meeting targets");
  design->add_option("constraints", constraints_file, "constraints file")->required()->check(CLI::ExistingFile);

  auto* materials = app.add_subcommand("materials", "inspect dispersion models");
  materials->require_subcommand(1);
  auto* mlist = materials->add_subcommand("list", "list built-in models");
  std::string show_name;
  auto* mshow = materials->add_subcommand("show", "print a model's coefficient document");
  mshow->add_option("name", show_name, "model name or file")->required();

  app.add_subcommand("kernels", "report the active comb kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (bandwidth->parsed()) return point_command(bw, g, {"bandwidth", "bandwidth_2nd", "poling_period"}, "bandwidth");
  if (cluster->parsed())
    return point_command(
        cl, g, {"cluster1", "cluster2", "joint", "cluster1_2nd", "cluster2_2nd", "joint_2nd", "sensitivity"}, "cluster");
  if (fidelity->parsed()) return point_command(fi, g, {"fidelity_single", "fidelity_bell"}, "fidelity");
  if (cavity->parsed()) return point_command(cv, g, {"finesse", "linewidth"}, "cavity");

  if (sweep->parsed()) {
    const auto s = load_scenario(sweep_file, MaterialRegistry::builtin(), material_override(g));
    emit(run_sweep(s, {g.workers}), g, s.name);
  }

  if (figure->parsed()) {
    FigureOptions o;
    o.workers = g.workers;
    o.material = material_override(g);
    o.points = figure_points;
    o.format = parse_format(g.format);
    const fs::path dir = g.out.empty() ? fs::path("figures") : fs::path(g.out);
    std::vector<std::string> ids = figure_id == "all" ? figure_ids() : std::vector<std::string>{figure_id};
    for (const auto& id : ids) {
      const auto files = reproduce_figure(id, dir, o);
      std::cout << files.table.string() << "\n" << files.svg.string() << "\n";
    }
  }

  if (design->parsed()) {
    const auto c = parse_constraints(read_file(constraints_file));
    const auto report = design_query(c, g.workers, material_override(g));
    if (!g.out.empty()) {
      const auto file = fs::path(g.out) / "design.json";
      write_text(file, to_json(report));
      std::cerr << "wrote " << file.string() << "\n";
    } else if (g.format == "json") {
      std::cout << to_json(report);
    }
    std::cout << summary(report);
  }

  if (mlist->parsed()) {
    const auto& reg = MaterialRegistry::builtin();
    for (const auto& n : reg.names()) {
      const auto m = reg.find(n);
      std::printf("%-16s fnv1a64:%016llx\n", n.c_str(), static_cast<unsigned long long>(m->content_hash()));
    }
  }
  if (mshow->parsed()) {
    const auto m = fs::exists(show_name) ? std::make_shared<const DispersionModel>(DispersionModel::load(show_name))
                                         : MaterialRegistry::builtin().find(show_name);
    std::cout << m->to_document();
  }

  if (app.got_subcommand("kernels"))
    std::printf("%s (avx2 %s)\n", std::string(kernels::to_string(kernels::active_kernel())).c_str(),
                kernels::avx2_supported() ? "available" : "unavailable");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
