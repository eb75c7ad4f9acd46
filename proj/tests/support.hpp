#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "cavspdc/scenario.hpp"

namespace testing {

inline cavspdc::MaterialPtr constant_material(double n_o, double n_e, double dn_dT = 0.0, double expansion = 0.0) {
  auto axis = [&](double n) {
    return R"({"form": "constant", "coefficients": {"n": )" + std::to_string(n) + R"(, "dn_dT": )" +
           std::to_string(dn_dT) + "}}";
  };
  const std::string doc = R"({"name": "flat", "ordinary": )" + axis(n_o) + R"(, "extraordinary": )" + axis(n_e) +
                          R"(, "thermal_expansion": {"linear_per_K": )" + std::to_string(expansion) +
                          R"(, "quadratic_per_K2": 0, "reference_temperature_K": 298.15},
       "validity": {"wavelength_m": [1e-7, 1e-4], "temperature_K": [1, 1000]}})";
  return std::make_shared<const cavspdc::DispersionModel>(cavspdc::DispersionModel::from_document(doc));
}

inline cavspdc::MaterialPtr ppln() { return cavspdc::MaterialRegistry::builtin().find("mgo-ppln"); }

inline double rel(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

inline cavspdc::Scenario with(const char* name, const cavspdc::PmType& pm, std::vector<std::string> outputs,
                              std::vector<cavspdc::SweepAxis> axes = {}) {
  auto s = cavspdc::builtin_scenario(name);
  s.pm = pm;
  s.outputs = std::move(outputs);
  s.columns = cavspdc::expand_outputs(s.outputs);
  s.axes = std::move(axes);
  return s;
}

}  // namespace testing
