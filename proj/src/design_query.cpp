#include "cavspdc/design_query.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace cavspdc {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw Error(Errc::ScenarioValidation, field + ": " + msg);
}

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) invalid(where, "expected an object");
  for (const auto& [k, _] : obj.items())
    if (!allowed.contains(k)) invalid(where + "." + k, "unknown key");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number() || !std::isfinite(v.get<double>())) invalid(where, "expected a finite number");
  return v.get<double>();
}

SweepAxis parse_range(const json& v, const std::string& where, std::string path) {
  only_keys(v, where, {"start", "stop", "points", "step"});
  if (!v.contains("start") || !v.contains("stop")) invalid(where, "needs start and stop");
  SweepAxis a{std::move(path), number(v["start"], where + ".start"), number(v["stop"], where + ".stop"), 1};
  if (v.contains("points") == v.contains("step")) invalid(where, "give exactly one of points or step");
  if (v.contains("points")) {
    if (!v["points"].is_number_integer() || v["points"].get<long long>() < 1)
      invalid(where + ".points", "must be a positive integer");
    a.points = v["points"].get<std::size_t>();
  } else {
    const double step = number(v["step"], where + ".step");
    if (!(step > 0.0)) invalid(where + ".step", "must be > 0");
    a.points = static_cast<std::size_t>(std::floor((a.stop - a.start) / step * (1.0 + 1e-12))) + 1;
    a.stop = a.start + step * static_cast<double>(a.points - 1);
  }
  if (a.points > 1 && !(a.stop > a.start)) invalid(where, "range is empty");
  return a;
}

std::vector<double> parse_values(const json& v, const std::string& where) {
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  } else {
    const auto a = parse_range(v, where, "");
    for (std::size_t i = 0; i < a.points; ++i) out.push_back(a.value(i));
  }
  if (out.empty()) invalid(where, "no values");
  return out;
}

json cell_json(const Cell& c) {
  switch (c.status) {
    case CellStatus::Ok: return c.value;
    case CellStatus::Infinite: return "inf";
    case CellStatus::Error: return {{"error", std::string(to_string(c.error))}};
  }
  return nullptr;
}

}  // namespace

DesignConstraints parse_constraints(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid("constraints", std::string("not valid JSON: ") + e.what());
  }
  only_keys(doc, "constraints",
            {"scenario", "scenario_file", "target_linewidth_Hz", "target_fidelity", "grid"});
  DesignConstraints c;
  if (doc.contains("scenario") && doc.contains("scenario_file"))
    invalid("constraints", "give scenario or scenario_file, not both");
  if (doc.contains("scenario")) {
    if (!doc["scenario"].is_string()) invalid("scenario", "expected a built-in scenario name");
    c.scenario = doc["scenario"].get<std::string>();
  }
  if (doc.contains("scenario_file")) {
    if (!doc["scenario_file"].is_string()) invalid("scenario_file", "expected a path");
    c.scenario_file = doc["scenario_file"].get<std::string>();
  }
  if (doc.contains("target_linewidth_Hz"))
    c.target_linewidth_Hz = number(doc["target_linewidth_Hz"], "target_linewidth_Hz");
  if (doc.contains("target_fidelity")) c.target_fidelity = number(doc["target_fidelity"], "target_fidelity");
  if (!(c.target_linewidth_Hz > 0.0)) invalid("target_linewidth_Hz", "must be > 0");
  if (!(c.target_fidelity >= 0.0 && c.target_fidelity <= 1.0)) invalid("target_fidelity", "must lie in [0, 1]");
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    only_keys(g, "grid", {"length_ratio", "delay_m", "R", "L_eff_m"});
    if (g.contains("length_ratio")) c.length_ratio = parse_range(g["length_ratio"], "grid.length_ratio", "source.length_ratio");
    if (g.contains("delay_m")) c.delay = parse_range(g["delay_m"], "grid.delay_m", "source.delay_m");
    if (g.contains("R")) c.reflectivities = parse_values(g["R"], "grid.R");
    if (g.contains("L_eff_m")) c.effective_lengths_m = parse_values(g["L_eff_m"], "grid.L_eff_m");
  }
  for (double r : c.reflectivities)
    if (!(r > 0.0 && r <= 1.0)) invalid("grid.R", "reflectivities must lie in (0, 1]");
  for (double l : c.effective_lengths_m)
    if (!(l > 0.0)) invalid("grid.L_eff_m", "lengths must be > 0");
  return c;
}

bool DesignReport::contains(double ratio, double delay_m, double R, double L_eff_m) const {
  auto nearest = [](auto first, auto last, auto key) {
    return std::min_element(first, last, [&](const auto& a, const auto& b) { return key(a) < key(b); });
  };
  if (sources.empty() || cavities.empty()) return false;
  auto s = nearest(sources.begin(), sources.end(), [&](const SourceCandidate& c) {
    return std::abs(c.length_ratio - ratio) + std::abs(c.delay_m - delay_m) * 1e3;
  });
  auto k = nearest(cavities.begin(), cavities.end(), [&](const CavityCandidate& c) {
    return std::abs(c.R - R) * 1e3 + std::abs(c.L_eff_m - L_eff_m);
  });
  return s->feasible && k->feasible;
}

DesignReport design_query(const DesignConstraints& c, const Scenario& base, unsigned workers) {
  DesignReport rep;
  rep.constraints = c;
  rep.provenance = provenance_for(base);

  Scenario s = base;
  s.axes = {c.length_ratio, c.delay};
  s.outputs = {"fidelity_bell", "joint"};
  s.columns = expand_outputs(s.outputs);
  for (const auto& a : s.axes)
    for (double v : {a.start, a.stop}) {
      ScenarioPoint p = s.base;
      set_parameter(p, a.parameter, v);
      validate_point(p);
    }
  const auto table = run_sweep(s, {workers});
  const auto& fid = table.column("fidelity_bell");
  const auto& joint = table.column("joint");
  for (std::size_t row = 0; row < table.rows(); ++row) {
    SourceCandidate sc;
    sc.length_ratio = table.axes[0].cells[row].value;
    sc.delay_m = table.axes[1].cells[row].value;
    sc.fidelity_bell = fid.cells[row];
    sc.joint = joint.cells[row];
    sc.feasible = sc.fidelity_bell.status == CellStatus::Ok && sc.fidelity_bell.value >= c.target_fidelity;
    rep.sources.push_back(sc);
  }

  for (double L : c.effective_lengths_m)
    for (double R : c.reflectivities) {
      CavityCandidate k;
      k.R = R;
      k.L_eff_m = L;
      k.eta = base.base.eta;
      CavitySpec spec;
      spec.R1 = spec.R2 = R;
      spec.eta = k.eta;
      spec.effective_length = metres(L);
      try {
        k.finesse = Cell::ok(finesse(spec));
        k.linewidth = Cell::ok(linewidth(spec).si());
      } catch (const Error& e) {
        if (k.finesse.status == CellStatus::Ok && std::isinf(k.finesse.value)) {
          k.linewidth = Cell::ok(0.0);
        } else {
          k.linewidth = Cell::failed(e.code());
        }
      }
      k.feasible = k.linewidth.status == CellStatus::Ok && k.linewidth.value <= c.target_linewidth_Hz;
      rep.cavities.push_back(k);
    }

  const auto n_src = static_cast<std::size_t>(
      std::count_if(rep.sources.begin(), rep.sources.end(), [](const auto& x) { return x.feasible; }));
  const auto n_cav = static_cast<std::size_t>(
      std::count_if(rep.cavities.begin(), rep.cavities.end(), [](const auto& x) { return x.feasible; }));
  rep.total_cells = rep.sources.size() * rep.cavities.size();
  rep.feasible_cells = n_src * n_cav;

  if (n_cav == 0) {
    double best = kInfinity;
    for (const auto& k : rep.cavities)
      if (k.linewidth.status == CellStatus::Ok) best = std::min(best, k.linewidth.value);
    std::ostringstream os;
    os << "finesse bound: narrowest linewidth on the grid is " << format_number(best) << " Hz, target "
       << format_number(c.target_linewidth_Hz) << " Hz";
    rep.diagnosis.push_back(os.str());
  }
  if (n_src == 0) {
    double best = 0.0;
    for (const auto& x : rep.sources)
      if (x.fidelity_bell.status == CellStatus::Ok) best = std::max(best, x.fidelity_bell.value);
    std::ostringstream os;
    os << "fidelity bound: highest Bell fidelity on the grid is " << format_number(best) << ", target "
       << format_number(c.target_fidelity);
    rep.diagnosis.push_back(os.str());
  }

  // Simplest hardware that meets both bounds: the shortest delay (then highest fidelity), and the
  // shortest cavity with the lowest mirror reflectivity.
  for (const auto& x : rep.sources) {
    if (!x.feasible) continue;
    if (!rep.recommended_source || x.delay_m < rep.recommended_source->delay_m ||
        (x.delay_m == rep.recommended_source->delay_m &&
         x.fidelity_bell.value > rep.recommended_source->fidelity_bell.value))
      rep.recommended_source = x;
  }
  for (const auto& k : rep.cavities) {
    if (!k.feasible) continue;
    if (!rep.recommended_cavity || k.L_eff_m < rep.recommended_cavity->L_eff_m ||
        (k.L_eff_m == rep.recommended_cavity->L_eff_m && k.R < rep.recommended_cavity->R))
      rep.recommended_cavity = k;
  }
  return rep;
}

DesignReport design_query(const DesignConstraints& c, unsigned workers, MaterialPtr material_override) {
  const Scenario s = c.scenario_file.empty()
                         ? builtin_scenario(c.scenario, material_override)
                         : load_scenario(c.scenario_file, MaterialRegistry::builtin(), material_override);
  return design_query(c, s, workers);
}

std::string to_json(const DesignReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["provenance"] = ordered_json::object();
  for (const auto& [k, v] : r.provenance) j["provenance"][k] = v;
  j["constraints"] = {{"target_linewidth_Hz", r.constraints.target_linewidth_Hz},
                      {"target_fidelity", r.constraints.target_fidelity}};
  j["feasible"] = r.feasible();
  j["feasible_cells"] = r.feasible_cells;
  j["total_cells"] = r.total_cells;
  j["diagnosis"] = r.diagnosis;
  double rmin = kInfinity, rmax = -kInfinity, dmin = kInfinity, dmax = -kInfinity;
  for (const auto& s : r.sources)
    if (s.feasible) {
      rmin = std::min(rmin, s.length_ratio);
      rmax = std::max(rmax, s.length_ratio);
      dmin = std::min(dmin, s.delay_m);
      dmax = std::max(dmax, s.delay_m);
    }
  if (r.feasible()) {
    j["feasible_length_ratio"] = {rmin, rmax};
    j["feasible_delay_m"] = {dmin, dmax};
  }
  if (r.recommended_source && r.recommended_cavity) {
    const auto& s = *r.recommended_source;
    const auto& k = *r.recommended_cavity;
    j["recommendation"] = {{"length_ratio", s.length_ratio},     {"delay_m", s.delay_m},
                           {"fidelity_bell", s.fidelity_bell.value}, {"joint_Hz", cell_json(s.joint)},
                           {"R", k.R},                           {"L_eff_m", k.L_eff_m},
                           {"finesse", cell_json(k.finesse)},    {"linewidth_Hz", cell_json(k.linewidth)}};
  }
  j["sources"] = ordered_json::array();
  for (const auto& s : r.sources)
    j["sources"].push_back({{"length_ratio", s.length_ratio}, {"delay_m", s.delay_m},
                            {"fidelity_bell", cell_json(s.fidelity_bell)}, {"joint_Hz", cell_json(s.joint)},
                            {"feasible", s.feasible}});
  j["cavities"] = ordered_json::array();
  for (const auto& k : r.cavities)
    j["cavities"].push_back({{"R", k.R}, {"L_eff_m", k.L_eff_m}, {"eta", k.eta},
                             {"finesse", cell_json(k.finesse)}, {"linewidth_Hz", cell_json(k.linewidth)},
                             {"feasible", k.feasible}});
  return j.dump(1) + "\n";
}

std::string summary(const DesignReport& r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "feasible cells: %zu of %zu\n", r.feasible_cells, r.total_cells);
  out += buf;
  for (const auto& d : r.diagnosis) out += "infeasible: " + d + "\n";
  if (r.feasible()) {
    double rmin = kInfinity, rmax = -kInfinity, dmin = kInfinity, dmax = -kInfinity;
    for (const auto& s : r.sources)
      if (s.feasible) {
        rmin = std::min(rmin, s.length_ratio);
        rmax = std::max(rmax, s.length_ratio);
        dmin = std::min(dmin, s.delay_m);
        dmax = std::max(dmax, s.delay_m);
      }
    std::snprintf(buf, sizeof buf, "source region: length ratio %.3g to %.3g, delay %.4g to %.4g um\n", rmin, rmax,
                  dmin * 1e6, dmax * 1e6);
    out += buf;
    for (const auto& k : r.cavities)
      if (k.feasible) {
        std::snprintf(buf, sizeof buf, "cavity: R %.6g, L_eff %.4g mm, linewidth %.4g MHz\n", k.R, k.L_eff_m * 1e3,
                      k.linewidth.value * 1e-6);
        out += buf;
      }
  }
  if (r.recommended_source && r.recommended_cavity) {
    const auto& s = *r.recommended_source;
    const auto& k = *r.recommended_cavity;
    std::snprintf(buf, sizeof buf,
                  "recommended: length ratio %.3g, delay %.4g um, Bell fidelity %.4f, R %.6g, L_eff %.4g mm, "
                  "linewidth %.4g MHz\n",
                  s.length_ratio, s.delay_m * 1e6, s.fidelity_bell.value, k.R, k.L_eff_m * 1e3,
                  k.linewidth.value * 1e-6);
    out += buf;
  }
  return out;
}

}  // namespace cavspdc
