#pragma once

#include <string_view>

#include "cavspdc/materials.hpp"
#include "cavspdc/units.hpp"

namespace cavspdc {

inline constexpr double kXiHwhm = 1.391557;  // sinc^2(xi) = 1/2

enum class PmKind { Type0, TypeI, TypeII };
std::string_view to_string(PmKind k);

/// Polarization assignment of pump, signal and idler in the crystal's own frame.
struct PmType {
  PmKind kind = PmKind::TypeII;
  Axis pump = Axis::Ordinary;
  Axis signal = Axis::Ordinary;
  Axis idler = Axis::Extraordinary;

  /// all three along `axis`
  static PmType type0(Axis axis = Axis::Extraordinary);
  /// e -> o + o
  static PmType type_i();
  /// o -> o + e
  static PmType type_ii();
  /// Same process seen in a crystal rotated by 90 degrees.
  [[nodiscard]] PmType rotated() const;
};

struct CrystalSpec {
  Length length = millimetres(10.0);        // at the expansion reference temperature
  Length poling_period = micrometres(10.0);  // at the expansion reference temperature
  int grating_sign = -1;                     // sign of the 2 pi/Lambda term in the mismatch
  Temperature temperature = kelvin(298.15);
  MaterialPtr material;

  [[nodiscard]] const DispersionModel& model() const;
  [[nodiscard]] Length length_at_temperature() const;
  [[nodiscard]] Length period_at_temperature() const;
};

/// One SPDC process in one crystal. Energy conservation is exact by construction.
class SpdcProcess {
 public:
  /// Idler derived as pump - signal.
  static SpdcProcess from_pump_signal(AngularFrequency pump, AngularFrequency signal,
                                      CrystalSpec crystal, PmType pm, int passes = 2);
  /// Pump derived as signal + idler.
  static SpdcProcess from_signal_idler(AngularFrequency signal, AngularFrequency idler,
                                       CrystalSpec crystal, PmType pm, int passes = 2);

  [[nodiscard]] AngularFrequency pump() const { return pump_; }
  [[nodiscard]] AngularFrequency signal() const { return signal_; }
  [[nodiscard]] AngularFrequency idler() const { return idler_; }
  [[nodiscard]] const CrystalSpec& crystal() const { return crystal_; }
  [[nodiscard]] const PmType& pm() const { return pm_; }
  [[nodiscard]] int passes() const { return passes_; }
  /// passes * physical crystal length
  [[nodiscard]] Length effective_length() const;

  /// Same process with the signal detuned by `delta` at fixed pump.
  [[nodiscard]] SpdcProcess detuned(AngularFrequency delta) const;
  [[nodiscard]] SpdcProcess with_crystal(CrystalSpec crystal) const;

 private:
  SpdcProcess(AngularFrequency p, AngularFrequency s, CrystalSpec c, PmType pm, int passes);

  AngularFrequency pump_, signal_, idler_;
  CrystalSpec crystal_;
  PmType pm_;
  int passes_;
};

/// k_s + k_i - k_p - sign * 2 pi / Lambda(T), rad/m.
double phase_mismatch(const SpdcProcess& proc);
/// k_s + k_i - k_p without the grating term, rad/m.
double material_mismatch(const SpdcProcess& proc);

struct PolingSolution {
  Length period;               // at the requested temperature
  Length period_at_reference;  // at the material's expansion reference temperature
  int grating_sign;
};

/// Poling period that zeroes the mismatch. Throws NoPositivePeriod.
PolingSolution solve_poling_period(AngularFrequency pump, AngularFrequency signal, const PmType& pm,
                                   const CrystalSpec& crystal_template, Temperature t);

/// Crystal template with the QPM period for `proc`'s frequencies filled in.
CrystalSpec phase_matched_crystal(const SpdcProcess& proc);

/// (d dk / d omega_s) at fixed pump = (n_g,s - n_g,i)/c, s/m.
double mismatch_slope(const SpdcProcess& proc);
/// (d^2 dk / d omega_s^2) at fixed pump = k_s'' + k_i'', s^2/m.
double mismatch_curvature(const SpdcProcess& proc);

/// FWHM in Hz from the linear expansion. Throws DegenerateSlope.
Frequency spdc_bandwidth(const SpdcProcess& proc);
/// FWHM in Hz from the expansion to second order in the signal detuning. Throws NoRealRoot.
Frequency spdc_bandwidth_second_order(const SpdcProcess& proc);
/// FWHM in Hz from bisection on sinc^2(dk(omega_s) l_eff / 2) = 1/2 with the full mismatch.
Frequency spdc_bandwidth_scan(const SpdcProcess& proc);

/// d dk / dT, rad/(m K), including the thermal change of the poling period.
double temperature_detuning_slope(const SpdcProcess& proc);

}  // namespace cavspdc
