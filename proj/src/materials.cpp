#include "cavspdc/materials.hpp"

#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cavspdc/error.hpp"
#include "json.hpp"

namespace cavspdc {

using nlohmann::json;

std::string_view to_string(Axis a) { return a == Axis::Ordinary ? "ordinary" : "extraordinary"; }

std::string_view to_string(DispersionForm f) {
  switch (f) {
    case DispersionForm::TemperatureSellmeier: return "temperature-sellmeier";
    case DispersionForm::Sellmeier: return "sellmeier";
    case DispersionForm::Constant: return "constant";
  }
  return "?";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(Errc::ParseError, msg); }

void require_keys(const json& obj, std::string_view where, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) parse_fail(std::string(where) + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!required.contains(key) && !optional.contains(key))
      parse_fail(std::string(where) + ": unknown key '" + key + "'");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) parse_fail(std::string(where) + ": missing key '" + key + "'");
  }
}

double number(const json& v, std::string_view where) {
  if (!v.is_number()) parse_fail(std::string(where) + ": expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(where) + ": not finite");
  return x;
}

DispersionForm parse_form(const std::string& s) {
  if (s == "temperature-sellmeier") return DispersionForm::TemperatureSellmeier;
  if (s == "sellmeier") return DispersionForm::Sellmeier;
  if (s == "constant") return DispersionForm::Constant;
  parse_fail("unknown dispersion form '" + s + "'");
}

AxisDispersion parse_axis(const json& obj, std::string_view where) {
  require_keys(obj, where, {"form", "coefficients"}, {"source"});
  AxisDispersion d;
  if (!obj["form"].is_string()) parse_fail(std::string(where) + ".form: expected a string");
  d.form = parse_form(obj["form"].get<std::string>());
  if (obj.contains("source")) d.source = obj["source"].get<std::string>();
  const auto& coeffs = obj["coefficients"];
  if (!coeffs.is_object()) parse_fail(std::string(where) + ".coefficients: expected an object");
  for (const auto& [key, value] : coeffs.items())
    d.coefficients[key] = number(value, std::string(where) + ".coefficients." + key);
  return d;
}

json axis_to_json(const AxisDispersion& d) {
  json j;
  j["form"] = std::string(to_string(d.form));
  j["coefficients"] = json::object();
  for (const auto& [k, v] : d.coefficients) j["coefficients"][k] = v;
  if (!d.source.empty()) j["source"] = d.source;
  return j;
}

json model_to_json(const DispersionModel& m) {
  json j;
  j["name"] = m.name();
  j["reference"] = m.reference();
  j["ordinary"] = axis_to_json(m.axis(Axis::Ordinary));
  j["extraordinary"] = axis_to_json(m.axis(Axis::Extraordinary));
  const auto& e = m.expansion();
  j["thermal_expansion"] = {{"linear_per_K", e.linear_per_k},
                            {"quadratic_per_K2", e.quadratic_per_k2},
                            {"reference_temperature_K", e.reference.si()}};
  if (!e.source.empty()) j["thermal_expansion"]["source"] = e.source;
  const auto& v = m.validity();
  j["validity"] = {{"wavelength_m", {v.wavelength_min.si(), v.wavelength_max.si()}},
                   {"temperature_K", {v.temperature_min.si(), v.temperature_max.si()}}};
  return j;
}

std::pair<double, double> parse_interval(const json& v, std::string_view where) {
  if (!v.is_array() || v.size() != 2) parse_fail(std::string(where) + ": expected [min, max]");
  double lo = number(v[0], where);
  double hi = number(v[1], where);
  if (!(lo < hi)) parse_fail(std::string(where) + ": min must be below max");
  return {lo, hi};
}

}  // namespace

DispersionModel::Compiled DispersionModel::compile(const AxisDispersion& d,
                                                   std::string_view axis_name) {
  Compiled c{d.form, {}};
  const auto& k = d.coefficients;
  auto where = std::string(axis_name) + " (" + std::string(to_string(d.form)) + ")";
  auto get = [&](const std::string& key) {
    auto it = k.find(key);
    if (it == k.end()) parse_fail(where + ": missing coefficient '" + key + "'");
    return it->second;
  };
  auto allow_only = [&](const std::set<std::string>& allowed) {
    for (const auto& [key, _] : k)
      if (!allowed.contains(key)) parse_fail(where + ": unknown coefficient '" + key + "'");
  };
  switch (d.form) {
    case DispersionForm::TemperatureSellmeier: {
      allow_only({"a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4", "t0_celsius"});
      const char* names[] = {"a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4"};
      for (int i = 0; i < 10; ++i) c.c[i] = get(names[i]);
      c.c[10] = k.contains("t0_celsius") ? k.at("t0_celsius") : 24.5;
      break;
    }
    case DispersionForm::Sellmeier: {
      allow_only({"B1", "C1", "B2", "C2", "B3", "C3"});
      for (int i = 0; i < 3; ++i) {
        auto b = "B" + std::to_string(i + 1);
        auto cc = "C" + std::to_string(i + 1);
        if (i == 0 || k.contains(b) || k.contains(cc)) {
          c.c[2 * i] = get(b);
          c.c[2 * i + 1] = get(cc);
        }
      }
      break;
    }
    case DispersionForm::Constant: {
      allow_only({"n", "dn_dT", "t_ref_K"});
      c.c[0] = get("n");
      c.c[1] = k.contains("dn_dT") ? k.at("dn_dT") : 0.0;
      c.c[2] = k.contains("t_ref_K") ? k.at("t_ref_K") : 298.15;
      break;
    }
  }
  return c;
}

IndexPoint DispersionModel::eval_compiled(const Compiled& c, AngularFrequency w, Temperature t) {
  const double omega = w.si();
  if (c.form == DispersionForm::Constant) {
    IndexPoint p;
    p.n = c.c[0] + c.c[1] * (t.si() - c.c[2]);
    p.dn_dT = c.c[1];
    return p;
  }
  // Work in u = lambda^2 (um^2); S(u, f) = n^2.
  const double lambda_um = kTwoPi * kSpeedOfLight / omega * 1e6;
  const double u = lambda_um * lambda_um;
  double s = 0.0, s_u = 0.0, s_uu = 0.0, s_T = 0.0;
  if (c.form == DispersionForm::TemperatureSellmeier) {
    const double a1 = c.c[0], a2 = c.c[1], a3 = c.c[2], a4 = c.c[3], a5 = c.c[4], a6 = c.c[5];
    const double b1 = c.c[6], b2 = c.c[7], b3 = c.c[8], b4 = c.c[9], t0 = c.c[10];
    const double tc = to_celsius(t);
    const double f = (tc - t0) * (tc + t0 + 2.0 * 273.16);
    const double f_T = 2.0 * tc + 2.0 * 273.16;
    const double q = a3 + b3 * f;
    const double d1 = u - q * q;
    const double d2 = u - a5 * a5;
    const double num1 = a2 + b2 * f;
    const double num2 = a4 + b4 * f;
    s = a1 + b1 * f + num1 / d1 + num2 / d2 - a6 * u;
    s_u = -num1 / (d1 * d1) - num2 / (d2 * d2) - a6;
    s_uu = 2.0 * num1 / (d1 * d1 * d1) + 2.0 * num2 / (d2 * d2 * d2);
    const double s_f = b1 + b2 / d1 + num1 * 2.0 * q * b3 / (d1 * d1) + b4 / d2;
    s_T = s_f * f_T;
  } else {
    s = 1.0;
    for (int i = 0; i < 3; ++i) {
      const double b = c.c[2 * i], cc = c.c[2 * i + 1];
      if (b == 0.0) continue;
      const double d = u - cc;
      s += b * u / d;
      s_u += -b * cc / (d * d);
      s_uu += 2.0 * b * cc / (d * d * d);
    }
  }
  IndexPoint p;
  p.n = std::sqrt(s);
  const double n_u = s_u / (2.0 * p.n);
  const double n_uu = (s_uu - 2.0 * n_u * n_u) / (2.0 * p.n);
  const double u_w = -2.0 * u / omega;
  const double u_ww = 6.0 * u / (omega * omega);
  p.dn_domega = n_u * u_w;
  p.d2n_domega2 = n_uu * u_w * u_w + n_u * u_ww;
  p.dn_dT = s_T / (2.0 * p.n);
  return p;
}

DispersionModel::DispersionModel(std::string name, AxisDispersion ordinary,
                                 AxisDispersion extraordinary, ThermalExpansion expansion,
                                 ValidityRange validity, std::string reference)
    : name_(std::move(name)),
      ordinary_(std::move(ordinary)),
      extraordinary_(std::move(extraordinary)),
      expansion_(std::move(expansion)),
      validity_(validity),
      reference_(std::move(reference)) {
  if (name_.empty()) parse_fail("material name must not be empty");
  if (!(validity_.wavelength_min.si() > 0.0 && validity_.wavelength_min < validity_.wavelength_max))
    parse_fail(name_ + ": invalid wavelength validity range");
  if (!(validity_.temperature_min.si() > 0.0 &&
        validity_.temperature_min < validity_.temperature_max))
    parse_fail(name_ + ": invalid temperature validity range");
  compiled_[0] = compile(ordinary_, "ordinary");
  compiled_[1] = compile(extraordinary_, "extraordinary");
  hash_ = fnv1a64(model_to_json(*this).dump(2));
}

DispersionModel DispersionModel::from_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("material document: ") + e.what());
  }
  require_keys(doc, "material",
               {"name", "ordinary", "extraordinary", "thermal_expansion", "validity"},
               {"reference"});
  const auto& te = doc["thermal_expansion"];
  require_keys(te, "thermal_expansion", {"linear_per_K", "quadratic_per_K2"},
               {"reference_temperature_K", "source"});
  ThermalExpansion exp;
  exp.linear_per_k = number(te["linear_per_K"], "thermal_expansion.linear_per_K");
  exp.quadratic_per_k2 = number(te["quadratic_per_K2"], "thermal_expansion.quadratic_per_K2");
  if (te.contains("reference_temperature_K"))
    exp.reference = kelvin(number(te["reference_temperature_K"], "reference_temperature_K"));
  if (te.contains("source")) exp.source = te["source"].get<std::string>();

  const auto& va = doc["validity"];
  require_keys(va, "validity", {"wavelength_m", "temperature_K"});
  auto [wl_lo, wl_hi] = parse_interval(va["wavelength_m"], "validity.wavelength_m");
  auto [t_lo, t_hi] = parse_interval(va["temperature_K"], "validity.temperature_K");

  if (!doc["name"].is_string()) parse_fail("material.name: expected a string");
  return DispersionModel(doc["name"].get<std::string>(), parse_axis(doc["ordinary"], "ordinary"),
                         parse_axis(doc["extraordinary"], "extraordinary"), exp,
                         ValidityRange{metres(wl_lo), metres(wl_hi), kelvin(t_lo), kelvin(t_hi)},
                         doc.contains("reference") ? doc["reference"].get<std::string>() : "");
}

DispersionModel DispersionModel::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::IoError, "cannot open material file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_document(ss.str());
}

std::string DispersionModel::to_document() const { return model_to_json(*this).dump(2) + "\n"; }

void DispersionModel::check_temperature(Temperature t) const {
  if (!(t >= validity_.temperature_min && t <= validity_.temperature_max)) {
    std::ostringstream os;
    os << name_ << ": temperature " << t.si() << " K outside validity ["
       << validity_.temperature_min.si() << ", " << validity_.temperature_max.si() << "] K";
    throw Error(Errc::OutOfValidityRange, os.str());
  }
}

void DispersionModel::check_point(Axis a, Length wavelength, Temperature t) const {
  if (!(wavelength >= validity_.wavelength_min && wavelength <= validity_.wavelength_max)) {
    std::ostringstream os;
    os << name_ << " (" << to_string(a) << "): wavelength " << wavelength.si() * 1e9
       << " nm outside validity [" << validity_.wavelength_min.si() * 1e9 << ", "
       << validity_.wavelength_max.si() * 1e9 << "] nm at " << t.si() << " K";
    throw Error(Errc::OutOfValidityRange, os.str());
  }
  check_temperature(t);
}

IndexPoint DispersionModel::evaluate(Axis a, AngularFrequency w, Temperature t) const {
  check_point(a, wavelength_from_angular(w), t);
  return eval_compiled(compiled_[a == Axis::Ordinary ? 0 : 1], w, t);
}

double DispersionModel::expansion_factor(Temperature t) const {
  const double dt = t.si() - expansion_.reference.si();
  return 1.0 + expansion_.linear_per_k * dt + expansion_.quadratic_per_k2 * dt * dt;
}

double DispersionModel::expansion_factor_derivative(Temperature t) const {
  const double dt = t.si() - expansion_.reference.si();
  return expansion_.linear_per_k + 2.0 * expansion_.quadratic_per_k2 * dt;
}

double refractive_index(const DispersionModel& model, Axis axis, Length wavelength,
                        Temperature t) {
  model.check_point(axis, wavelength, t);
  return model.evaluate(axis, angular_from_wavelength(wavelength), t).n;
}

double index_derivative_omega(const DispersionModel& model, Axis axis, AngularFrequency w,
                              Temperature t) {
  return model.evaluate(axis, w, t).dn_domega;
}

Length poled_period(const DispersionModel& model, Length period_at_reference, Temperature t) {
  model.check_temperature(t);
  return period_at_reference * model.expansion_factor(t);
}

void MaterialRegistry::add(MaterialPtr model) {
  auto name = model->name();
  models_[name] = std::move(model);
}

void MaterialRegistry::load_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw Error(Errc::IoError, "material directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) add(std::make_shared<const DispersionModel>(DispersionModel::load(f)));
}

MaterialPtr MaterialRegistry::find(std::string_view name) const {
  auto it = models_.find(name);
  if (it == models_.end())
    throw Error(Errc::InvalidArgument, "unknown material '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> MaterialRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : models_) out.push_back(k);
  return out;
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("CAVSPDC_DATA_DIR"); env && *env) return env;
  return CAVSPDC_DATA_DIR;
}

const MaterialRegistry& MaterialRegistry::builtin() {
  static const MaterialRegistry registry = [] {
    MaterialRegistry r;
    r.load_directory(data_directory() / "materials");
    return r;
  }();
  return registry;
}

}  // namespace cavspdc
