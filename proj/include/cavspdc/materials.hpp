#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavspdc/units.hpp"

namespace cavspdc {

enum class Axis { Ordinary, Extraordinary };

constexpr Axis orthogonal(Axis a) {
  return a == Axis::Ordinary ? Axis::Extraordinary : Axis::Ordinary;
}
std::string_view to_string(Axis a);

/// Functional forms understood by the coefficient files.
///
/// temperature-sellmeier:
///   n^2 = a1 + b1 f + (a2 + b2 f)/(L^2 - (a3 + b3 f)^2) + (a4 + b4 f)/(L^2 - a5^2) - a6 L^2
///   f = (t - t0)(t + t0 + 546.32), t in Celsius, L in micrometres.
/// sellmeier:
///   n^2 = 1 + sum_i B_i L^2/(L^2 - C_i), C_i in um^2, no temperature dependence.
/// constant:
///   n = n0 + dn_dT (T - t_ref_K), dispersionless.
enum class DispersionForm { TemperatureSellmeier, Sellmeier, Constant };

std::string_view to_string(DispersionForm f);

struct AxisDispersion {
  DispersionForm form = DispersionForm::Constant;
  std::map<std::string, double> coefficients;
  std::string source;
};

struct ThermalExpansion {
  double linear_per_k = 0.0;
  double quadratic_per_k2 = 0.0;
  Temperature reference = kelvin(298.15);
  std::string source;
};

struct ValidityRange {
  Length wavelength_min;
  Length wavelength_max;
  Temperature temperature_min;
  Temperature temperature_max;
};

/// Refractive index and its derivatives at one (axis, omega, T) point.
/// Frequency derivatives are with respect to angular frequency.
struct IndexPoint {
  double n = 1.0;
  double dn_domega = 0.0;    // s/rad
  double d2n_domega2 = 0.0;  // s^2/rad^2
  double dn_dT = 0.0;        // 1/K

  /// n + omega dn/domega
  [[nodiscard]] double group_index(AngularFrequency w) const { return n + w.si() * dn_domega; }
};

/// Immutable dispersion model for one uniaxial crystal material.
class DispersionModel {
 public:
  DispersionModel(std::string name, AxisDispersion ordinary, AxisDispersion extraordinary,
                  ThermalExpansion expansion, ValidityRange validity, std::string reference);

  /// Parses the JSON coefficient document; unknown keys are rejected.
  static DispersionModel from_document(std::string_view text);
  static DispersionModel load(const std::filesystem::path& file);
  [[nodiscard]] std::string to_document() const;

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::string& reference() const { return reference_; }
  [[nodiscard]] const AxisDispersion& axis(Axis a) const {
    return a == Axis::Ordinary ? ordinary_ : extraordinary_;
  }
  [[nodiscard]] const ThermalExpansion& expansion() const { return expansion_; }
  [[nodiscard]] const ValidityRange& validity() const { return validity_; }
  /// FNV-1a 64 of the canonical document; embedded in every emitted table.
  [[nodiscard]] std::uint64_t content_hash() const { return hash_; }

  /// Analytic index and derivatives. Throws Errc::OutOfValidityRange.
  [[nodiscard]] IndexPoint evaluate(Axis a, AngularFrequency w, Temperature t) const;

  /// Linear expansion factor s(T) = 1 + a dT + b dT^2 relative to the reference temperature.
  [[nodiscard]] double expansion_factor(Temperature t) const;
  [[nodiscard]] double expansion_factor_derivative(Temperature t) const;

  void check_temperature(Temperature t) const;
  void check_point(Axis a, Length wavelength, Temperature t) const;

 private:
  struct Compiled {
    DispersionForm form;
    double c[11];
  };
  static Compiled compile(const AxisDispersion& d, std::string_view axis_name);
  static IndexPoint eval_compiled(const Compiled& c, AngularFrequency w, Temperature t);

  std::string name_;
  AxisDispersion ordinary_;
  AxisDispersion extraordinary_;
  ThermalExpansion expansion_;
  ValidityRange validity_;
  std::string reference_;
  Compiled compiled_[2];
  std::uint64_t hash_ = 0;
};

using MaterialPtr = std::shared_ptr<const DispersionModel>;

/// Refractive index at a vacuum wavelength.
double refractive_index(const DispersionModel& model, Axis axis, Length wavelength, Temperature t);
/// dn/domega (s/rad).
double index_derivative_omega(const DispersionModel& model, Axis axis, AngularFrequency w,
                              Temperature t);
/// Poling period at temperature t given its value at the expansion reference temperature.
Length poled_period(const DispersionModel& model, Length period_at_reference, Temperature t);

/// Name -> model map. Immutable once populated.
class MaterialRegistry {
 public:
  void add(MaterialPtr model);
  /// Loads every *.json file in the directory.
  void load_directory(const std::filesystem::path& dir);
  [[nodiscard]] MaterialPtr find(std::string_view name) const;
  [[nodiscard]] std::vector<std::string> names() const;

  /// Registry populated from the shipped data/materials directory
  /// (or $CAVSPDC_DATA_DIR/materials when set).
  static const MaterialRegistry& builtin();

 private:
  std::map<std::string, MaterialPtr, std::less<>> models_;
};

std::filesystem::path data_directory();

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace cavspdc
