#include "cavspdc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cavspdc/error.hpp"
#include "json.hpp"

namespace cavspdc {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw Error(Errc::ScenarioValidation, field + ": " + msg);
}

struct ParamInfo {
  std::string path;
  std::string unit;
  double ScenarioPoint::*field;
};

const std::vector<ParamInfo>& params() {
  static const std::vector<ParamInfo> p = {
      {"source.length_ratio", "1", &ScenarioPoint::length_ratio},
      {"source.total_length_m", "m", &ScenarioPoint::total_length_m},
      {"source.air_m", "m", &ScenarioPoint::air_m},
      {"source.delay_m", "m", &ScenarioPoint::delay_m},
      {"source.temperature_K", "K", &ScenarioPoint::temperature_K},
      {"cavity.R", "1", nullptr},
      {"cavity.R1", "1", &ScenarioPoint::R1},
      {"cavity.R2", "1", &ScenarioPoint::R2},
      {"cavity.eta", "1", &ScenarioPoint::eta},
      {"cavity.L_eff_m", "m", &ScenarioPoint::L_eff_m},
  };
  return p;
}

const ParamInfo& param(std::string_view path) {
  for (const auto& p : params())
    if (p.path == path) return p;
  invalid(std::string(path), "unknown parameter path");
}

struct OutputInfo {
  std::string name;
  std::vector<OutputColumn> columns;
};

const std::vector<OutputInfo>& outputs_table() {
  using Q = Output;
  static const std::vector<OutputInfo> t = {
      {"bandwidth", {{"bandwidth1", "Hz", Q::Bandwidth1}, {"bandwidth2", "Hz", Q::Bandwidth2}}},
      {"bandwidth_2nd",
       {{"bandwidth1_2nd", "Hz", Q::Bandwidth1Second}, {"bandwidth2_2nd", "Hz", Q::Bandwidth2Second}}},
      {"cluster1", {{"cluster1", "Hz", Q::Cluster1}}},
      {"cluster2", {{"cluster2", "Hz", Q::Cluster2}}},
      {"joint", {{"joint", "Hz", Q::Joint}}},
      {"cluster1_2nd", {{"cluster1_2nd", "Hz", Q::Cluster1Second}}},
      {"cluster2_2nd", {{"cluster2_2nd", "Hz", Q::Cluster2Second}}},
      {"joint_2nd", {{"joint_2nd", "Hz", Q::JointSecond}}},
      {"fidelity_single",
       {{"fidelity_single1", "1", Q::FidelitySingle1}, {"fidelity_single2", "1", Q::FidelitySingle2}}},
      {"fidelity_bell", {{"fidelity_bell", "1", Q::FidelityBell}}},
      {"finesse", {{"finesse", "1", Q::Finesse}}},
      {"linewidth", {{"linewidth", "Hz", Q::Linewidth}}},
      {"sensitivity",
       {{"sensitivity1", "Hz/K", Q::Sensitivity1}, {"sensitivity2", "Hz/K", Q::Sensitivity2}}},
      {"poling_period", {{"poling_period", "m", Q::PolingPeriod}}},
  };
  return t;
}

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!obj.is_object()) invalid(where, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!required.contains(key) && !optional.contains(key)) invalid(where + "." + key, "unknown key");
  for (const auto& key : required)
    if (!obj.contains(key)) invalid(where + "." + key, "missing");
}

double num(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) invalid(where + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(where + "." + key, "must be finite");
  return x;
}

std::string str(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) invalid(where + "." + key, "expected a string");
  return v.get<std::string>();
}

void positive(double v, const std::string& field) {
  if (!(v > 0.0)) invalid(field, "must be > 0");
}

}  // namespace

PmType parse_phase_matching(std::string_view s) {
  if (s == "type-ii") return PmType::type_ii();
  if (s == "type-i") return PmType::type_i();
  if (s == "type-0") return PmType::type0(Axis::Extraordinary);
  if (s == "type-0-ordinary") return PmType::type0(Axis::Ordinary);
  invalid("phase_matching", "expected type-0, type-0-ordinary, type-i or type-ii, got '" + std::string(s) + "'");
}

std::string phase_matching_name(const PmType& pm) {
  if (pm.kind == PmKind::Type0) return pm.signal == Axis::Ordinary ? "type-0-ordinary" : "type-0";
  return std::string(to_string(pm.kind));
}

const std::vector<std::string>& parameter_paths() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& p : params()) n.push_back(p.path);
    return n;
  }();
  return names;
}

std::string_view parameter_unit(std::string_view path) { return param(path).unit; }

void set_parameter(ScenarioPoint& p, std::string_view path, double value) {
  const auto& info = param(path);
  if (info.field == nullptr) {
    p.R1 = value;
    p.R2 = value;
  } else {
    p.*(info.field) = value;
  }
}

double get_parameter(const ScenarioPoint& p, std::string_view path) {
  const auto& info = param(path);
  return info.field == nullptr ? p.R1 : p.*(info.field);
}

void validate_point(const ScenarioPoint& p) {
  if (!(p.length_ratio > 0.0 && p.length_ratio < 1.0))
    invalid("source.length_ratio", "must lie in (0, 1)");
  positive(p.total_length_m, "source.total_length_m");
  if (!(p.air_m >= 0.0)) invalid("source.air_m", "must be >= 0");
  if (!(p.delay_m >= 0.0)) invalid("source.delay_m", "must be >= 0");
  positive(p.temperature_K, "source.temperature_K");
  if (!(p.R1 > 0.0 && p.R1 <= 1.0)) invalid("cavity.R1", "must lie in (0, 1]");
  if (!(p.R2 > 0.0 && p.R2 <= 1.0)) invalid("cavity.R2", "must lie in (0, 1]");
  if (!(p.eta >= 0.0 && p.eta < 1.0)) invalid("cavity.eta", "must lie in [0, 1)");
  positive(p.L_eff_m, "cavity.L_eff_m");
}

double SweepAxis::value(std::size_t i) const {
  if (points <= 1) return start;
  if (i + 1 == points) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::vector<OutputColumn> expand_outputs(const std::vector<std::string>& names) {
  if (names.empty()) invalid("outputs", "at least one output quantity is required");
  std::vector<OutputColumn> cols;
  std::set<std::string> seen;
  for (const auto& n : names) {
    const OutputInfo* found = nullptr;
    for (const auto& o : outputs_table())
      if (o.name == n) found = &o;
    if (!found) invalid("outputs", "unknown quantity '" + n + "'");
    if (!seen.insert(n).second) invalid("outputs", "duplicate quantity '" + n + "'");
    cols.insert(cols.end(), found->columns.begin(), found->columns.end());
  }
  return cols;
}

const std::vector<std::string>& output_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& o : outputs_table()) n.push_back(o.name);
    return n;
  }();
  return names;
}

std::string_view to_string(Output q) {
  for (const auto& o : outputs_table())
    for (const auto& c : o.columns)
      if (c.quantity == q) return c.name;
  return "?";
}

std::string Scenario::to_document() const {
  json j;
  j["name"] = name;
  j["description"] = description;
  j["material"] = material ? material->name() : "";
  j["material_hash"] = material ? material->content_hash() : 0;
  j["phase_matching"] = phase_matching_name(pm);
  j["frequencies"] = {{"pump_rad_per_s", pump.si()}, {"signal_rad_per_s", signal.si()}};
  j["source"] = {{"passes", passes}};
  for (const auto& p : params())
    if (p.field) j["point"][p.path] = base.*(p.field);
  j["loss_ledger"] = json::array();
  for (const auto& e : loss_ledger)
    j["loss_ledger"].push_back({{"label", e.label}, {"loss", e.loss}, {"passes", e.passes}});
  j["target"] = std::string(to_string(target));
  j["truncation"] = {{"tail_tolerance", truncation.tail_tolerance},
                     {"max_terms", truncation.max_terms}};
  j["sweep"] = json::array();
  for (const auto& a : axes)
    j["sweep"].push_back(
        {{"parameter", a.parameter}, {"start", a.start}, {"stop", a.stop}, {"points", a.points}});
  j["outputs"] = outputs;
  return j.dump(2);
}

std::uint64_t Scenario::hash() const { return fnv1a64(to_document()); }

SourceConfig Scenario::source_at(const ScenarioPoint& p) const {
  validate_point(p);
  SourceConfig cfg;
  const double l1 = p.length_ratio * p.total_length_m;
  cfg.crystal1.length = metres(l1);
  cfg.crystal2.length = metres(p.total_length_m - l1);
  cfg.crystal1.material = material;
  cfg.crystal2.material = material;
  cfg.pm = pm;
  cfg.air = metres(p.air_m);
  cfg.set_idler_delay(metres(p.delay_m));
  cfg.set_pump_signal(pump, signal);
  // poling fixed by the base temperature, then the crystals are moved to the point's temperature
  cfg.set_temperature(kelvin(base.temperature_K));
  cfg = cfg.phase_matched();
  cfg.set_temperature(kelvin(p.temperature_K));
  return cfg;
}

CavitySpec Scenario::cavity_at(const ScenarioPoint& p) const {
  validate_point(p);
  CavitySpec c;
  c.R1 = p.R1;
  c.R2 = p.R2;
  c.eta = p.eta;
  c.effective_length = metres(p.L_eff_m);
  c.ledger = loss_ledger;
  return c;
}

Scenario parse_scenario(std::string_view text, const MaterialRegistry& registry,
                        MaterialPtr material_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid("scenario", std::string("not valid JSON: ") + e.what());
  }
  require_keys(doc, "scenario", {"name", "phase_matching", "frequencies", "source", "outputs"},
               {"description", "material", "cavity", "target", "sweep", "truncation"});
  Scenario s;
  s.name = str(doc, "name", "scenario");
  if (s.name.empty()) invalid("name", "must not be empty");
  if (doc.contains("description")) s.description = str(doc, "description", "scenario");

  if (material_override) {
    s.material = material_override;
  } else {
    if (!doc.contains("material")) invalid("material", "missing");
    const auto mat = str(doc, "material", "scenario");
    try {
      s.material = registry.find(mat);
    } catch (const Error&) {
      invalid("material", "unknown material '" + mat + "'");
    }
  }
  s.pm = parse_phase_matching(str(doc, "phase_matching", "scenario"));

  const auto& fr = doc["frequencies"];
  require_keys(fr, "frequencies", {},
               {"pump_wavelength_m", "signal_wavelength_m", "idler_wavelength_m", "signal_offset_Hz"});
  auto has = [&](const char* k) { return fr.contains(k); };
  auto wl = [&](const char* k) {
    const double v = num(fr, k, "frequencies");
    positive(v, std::string("frequencies.") + k);
    return angular_from_wavelength(metres(v));
  };
  SourceConfig tmp;
  if (has("signal_wavelength_m") && has("idler_wavelength_m") && !has("pump_wavelength_m") &&
      !has("signal_offset_Hz")) {
    tmp.set_signal_idler(wl("signal_wavelength_m"), wl("idler_wavelength_m"));
  } else if (has("pump_wavelength_m") && has("signal_wavelength_m") && !has("idler_wavelength_m") &&
             !has("signal_offset_Hz")) {
    tmp.set_pump_signal(wl("pump_wavelength_m"), wl("signal_wavelength_m"));
  } else if (has("pump_wavelength_m") && has("signal_offset_Hz") && !has("signal_wavelength_m") &&
             !has("idler_wavelength_m")) {
    const auto p = wl("pump_wavelength_m");
    const double off = num(fr, "signal_offset_Hz", "frequencies");
    tmp.set_pump_signal(p, p * 0.5 + to_angular(hertz(off)));
  } else {
    invalid("frequencies",
            "give exactly one of {signal_wavelength_m, idler_wavelength_m}, "
            "{pump_wavelength_m, signal_wavelength_m} or {pump_wavelength_m, signal_offset_Hz}");
  }
  if (!(tmp.signal.si() > 0.0 && tmp.idler.si() > 0.0))
    invalid("frequencies", "signal and idler must both be below the pump");
  s.pump = tmp.pump;
  s.signal = tmp.signal;

  const auto& src = doc["source"];
  require_keys(src, "source", {"total_length_m", "length_ratio"},
               {"air_m", "delay_m", "temperature_K", "passes"});
  s.base.total_length_m = num(src, "total_length_m", "source");
  s.base.length_ratio = num(src, "length_ratio", "source");
  if (src.contains("air_m")) s.base.air_m = num(src, "air_m", "source");
  if (src.contains("delay_m")) s.base.delay_m = num(src, "delay_m", "source");
  if (src.contains("temperature_K")) s.base.temperature_K = num(src, "temperature_K", "source");
  if (src.contains("passes")) {
    const auto& v = src["passes"];
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != 2))
      invalid("source.passes", "must be 1 or 2");
    s.passes = v.get<int>();
  }

  if (doc.contains("cavity")) {
    const auto& cav = doc["cavity"];
    require_keys(cav, "cavity", {}, {"R", "R1", "R2", "eta", "loss_ledger", "L_eff_m"});
    if (cav.contains("R")) {
      if (cav.contains("R1") || cav.contains("R2")) invalid("cavity.R", "give R or R1/R2, not both");
      s.base.R1 = s.base.R2 = num(cav, "R", "cavity");
    }
    if (cav.contains("R1")) s.base.R1 = num(cav, "R1", "cavity");
    if (cav.contains("R2")) s.base.R2 = num(cav, "R2", "cavity");
    if (cav.contains("L_eff_m")) s.base.L_eff_m = num(cav, "L_eff_m", "cavity");
    if (cav.contains("eta") && cav.contains("loss_ledger"))
      invalid("cavity.eta", "give eta or loss_ledger, not both");
    if (cav.contains("eta")) s.base.eta = num(cav, "eta", "cavity");
    if (cav.contains("loss_ledger")) {
      const auto& led = cav["loss_ledger"];
      if (!led.is_array()) invalid("cavity.loss_ledger", "expected an array");
      for (std::size_t i = 0; i < led.size(); ++i) {
        const std::string where = "cavity.loss_ledger[" + std::to_string(i) + "]";
        require_keys(led[i], where, {"loss"}, {"label", "passes"});
        LossEntry e;
        e.loss = num(led[i], "loss", where);
        if (led[i].contains("label")) e.label = str(led[i], "label", where);
        if (led[i].contains("passes")) {
          if (!led[i]["passes"].is_number_integer() || led[i]["passes"].get<int>() < 0)
            invalid(where + ".passes", "must be a non-negative integer");
          e.passes = led[i]["passes"].get<int>();
        }
        if (!(e.loss >= 0.0 && e.loss < 1.0)) invalid(where + ".loss", "must lie in [0, 1)");
        s.loss_ledger.push_back(e);
      }
      s.base.eta = loss_budget(s.loss_ledger).multiplicative;
    }
  }
  validate_point(s.base);

  if (doc.contains("target")) {
    try {
      s.target = parse_bell_target(str(doc, "target", "scenario"));
    } catch (const Error& e) {
      invalid("target", e.what());
    }
  }

  if (doc.contains("truncation")) {
    const auto& t = doc["truncation"];
    require_keys(t, "truncation", {}, {"tail_tolerance", "max_terms"});
    if (t.contains("tail_tolerance")) {
      s.truncation.tail_tolerance = num(t, "tail_tolerance", "truncation");
      positive(s.truncation.tail_tolerance, "truncation.tail_tolerance");
    }
    if (t.contains("max_terms")) {
      if (!t["max_terms"].is_number_integer() || t["max_terms"].get<long long>() < 0)
        invalid("truncation.max_terms", "must be a non-negative integer");
      s.truncation.max_terms = t["max_terms"].get<std::size_t>();
    }
  }

  if (doc.contains("sweep")) {
    const auto& sw = doc["sweep"];
    if (!sw.is_array()) invalid("sweep", "expected an array of axes");
    if (sw.size() > 2) invalid("sweep", "at most two axes are supported");
    std::set<std::string> used;
    for (std::size_t i = 0; i < sw.size(); ++i) {
      const std::string where = "sweep[" + std::to_string(i) + "]";
      require_keys(sw[i], where, {"parameter", "start", "stop"}, {"points", "step"});
      SweepAxis a;
      a.parameter = str(sw[i], "parameter", where);
      if (std::find(parameter_paths().begin(), parameter_paths().end(), a.parameter) ==
          parameter_paths().end())
        invalid(where + ".parameter", "unknown parameter path '" + a.parameter + "'");
      if (!used.insert(a.parameter).second) invalid(where + ".parameter", "axis repeated");
      a.start = num(sw[i], "start", where);
      a.stop = num(sw[i], "stop", where);
      if (sw[i].contains("points") == sw[i].contains("step"))
        invalid(where, "give exactly one of points or step");
      if (sw[i].contains("points")) {
        const auto& v = sw[i]["points"];
        if (!v.is_number_integer() || v.get<long long>() < 1)
          invalid(where + ".points", "must be a positive integer");
        a.points = v.get<std::size_t>();
        if (a.points > 1 && !(a.stop > a.start)) invalid(where, "range is empty (stop <= start)");
      } else {
        const double step = num(sw[i], "step", where);
        if (!(step > 0.0)) invalid(where + ".step", "must be > 0");
        if (!(a.stop >= a.start)) invalid(where, "range is empty (stop < start)");
        a.points = static_cast<std::size_t>(std::floor((a.stop - a.start) / step * (1.0 + 1e-12))) + 1;
        a.stop = a.start + step * static_cast<double>(a.points - 1);
      }
      if (a.points > 1000000) invalid(where + ".points", "more than 1e6 points");
      for (double v : {a.start, a.stop}) {
        ScenarioPoint p = s.base;
        set_parameter(p, a.parameter, v);
        try {
          validate_point(p);
        } catch (const Error& e) {
          invalid(where, std::string("range leaves the valid domain: ") + e.what());
        }
      }
      s.axes.push_back(a);
    }
  }

  const auto& outs = doc["outputs"];
  if (!outs.is_array()) invalid("outputs", "expected an array of quantity names");
  for (const auto& o : outs) {
    if (!o.is_string()) invalid("outputs", "expected quantity names");
    s.outputs.push_back(o.get<std::string>());
  }
  s.columns = expand_outputs(s.outputs);
  return s;
}

Scenario load_scenario(const std::filesystem::path& file, const MaterialRegistry& registry,
                       MaterialPtr material_override) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::IoError, "cannot open scenario file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), registry, std::move(material_override));
}

std::vector<std::string> builtin_scenario_names() { return {"near-degenerate", "non-degenerate"}; }

Scenario builtin_scenario(std::string_view name, MaterialPtr material_override) {
  std::string file(name);
  std::replace(file.begin(), file.end(), '-', '_');
  const auto path = data_directory() / "scenarios" / (file + ".json");
  if (!std::filesystem::exists(path))
    throw Error(Errc::InvalidArgument, "unknown built-in scenario '" + std::string(name) + "'");
  return load_scenario(path, MaterialRegistry::builtin(), std::move(material_override));
}

}  // namespace cavspdc
