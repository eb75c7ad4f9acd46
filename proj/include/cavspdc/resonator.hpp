#pragma once

#include <array>
#include <utility>

#include "cavspdc/phasematch.hpp"

namespace cavspdc {

/// Modes 1,2: signal and idler generated in crystal 1. Modes 3,4: signal and idler from crystal 2.
enum class ModeId { M1 = 1, M2 = 2, M3 = 3, M4 = 4 };

constexpr int index_of(ModeId m) { return static_cast<int>(m) - 1; }
constexpr bool is_signal_mode(ModeId m) { return m == ModeId::M1 || m == ModeId::M3; }

/// Two crystals in one standing-wave cavity, crystal 2 rotated by 90 degrees.
struct SourceConfig {
  CrystalSpec crystal1;
  CrystalSpec crystal2;
  Length air = metres(0.0);
  PmType pm = PmType::type_ii();
  std::array<Length, 4> extra_delay{};  // per mode, index_of(ModeId)
  AngularFrequency pump;
  AngularFrequency signal;
  AngularFrequency idler;

  /// Fills idler = pump - signal with the exact-sum convention of SpdcProcess.
  void set_pump_signal(AngularFrequency p, AngularFrequency s);
  void set_signal_idler(AngularFrequency s, AngularFrequency i);
  /// Sets both crystal temperatures.
  void set_temperature(Temperature t);
  /// Applies the same delay to both idler modes.
  void set_idler_delay(Length dl);
  void validate() const;

  /// SPDC process of crystal 1 or 2 in that crystal's own frame.
  [[nodiscard]] SpdcProcess process(int crystal, int passes = 2) const;
  /// Both crystals solved for QPM at the configured frequencies.
  [[nodiscard]] SourceConfig phase_matched() const;
};

/// Centre frequency of the mode (signal or idler).
AngularFrequency centre_frequency(const SourceConfig& cfg, ModeId mode);

struct ModeNumber {
  double m = 0.0;
  double dm_domega = 0.0;    // s/rad
  double d2m_domega2 = 0.0;  // s^2/rad^2
  double dm_dT = 0.0;        // 1/K, both crystals at their own temperature
};

/// m_j(omega) = omega/(pi c) (l1 n_a + l2 n_b + l_air + dl_j) with analytic derivatives.
ModeNumber mode_derivatives(const SourceConfig& cfg, ModeId mode, AngularFrequency w);
double mode_number(const SourceConfig& cfg, ModeId mode, AngularFrequency w);

/// |d m / d omega|^-1 / (2 pi), Hz.
Frequency fsr(const SourceConfig& cfg, ModeId mode, AngularFrequency w);

/// Pair 1 = modes (1,2), pair 2 = modes (3,4).
std::pair<ModeId, ModeId> modes_of_pair(int pair);

/// FSR_a FSR_b / |FSR_a - FSR_b| with FSRs at the signal and idler frequencies. Infinite when equal.
Frequency cluster_spacing_first_order(const SourceConfig& cfg, int pair);
/// Omega_1 Omega_2 / |Omega_1 - Omega_2|.
Frequency joint_cluster_spacing(Frequency omega1, Frequency omega2);
Frequency joint_cluster_spacing(const SourceConfig& cfg);

/// Coefficients of the joint mode-number expansion for a pair at fixed pump.
struct JointExpansion {
  double slope = 0.0;      // (dm/domega_s)_wp, s/rad
  double curvature = 0.0;  // (d2m/domega_s^2)_wp, s^2/rad^2
  double thermal = 0.0;    // dm/dT, 1/K
};
JointExpansion joint_expansion(const SourceConfig& cfg, int pair);

/// Smallest positive root of slope W + curvature W^2/2 + thermal dT = +-1, in Hz. Throws NoRealRoot.
Frequency cluster_spacing_second_order(const SourceConfig& cfg, int pair,
                                       double temperature_offset_K = 0.0);
Frequency cluster_spacing_second_order(const JointExpansion& e, double temperature_offset_K = 0.0);

/// Shift of the double-resonance position per kelvin, Hz/K (signed).
double temperature_sensitivity(const SourceConfig& cfg, int pair);

}  // namespace cavspdc
