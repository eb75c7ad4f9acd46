#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cavspdc/resonator.hpp"

namespace cavspdc {

enum class BellTarget { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

std::string_view to_string(BellTarget t);
BellTarget parse_bell_target(std::string_view s);
/// psi states need orthogonal signal/idler (type II), phi states parallel ones (type 0/I).
bool is_compatible(BellTarget t, PmKind k);
/// Relative sign of the crystal-2 term in the target state.
double target_phase(BellTarget t);

struct TruncationPolicy {
  double tail_tolerance = 1e-8;  // bound on the discarded tail mass relative to |A_0|^2
  std::size_t max_terms = 100000;
  std::optional<std::size_t> fixed_terms;
  std::array<bool, 2> single_mode{false, false};
};

/// Number of comb lines kept on each side for a phase step x1 = l |dk_1| / 2.
std::size_t truncation_terms(double phase_step, const TruncationPolicy& policy,
                             bool single_mode = false);

struct CrystalComb {
  Frequency spacing;        // comb step, Hz (may be infinite)
  double phase_step = 0.0;  // l |dk_1| / 2
  std::size_t terms = 0;    // N; j runs over [-N, N]
  std::vector<double> amplitudes;  // index j + N

  [[nodiscard]] double at(long j) const { return amplitudes[static_cast<std::size_t>(j + static_cast<long>(terms))]; }
  [[nodiscard]] double power() const;
};

struct AmplitudeComb {
  std::array<CrystalComb, 2> crystals;
  double crystal2_phase = -1.0;  // unit-modulus factor on the crystal-2 amplitudes
  BellTarget target = BellTarget::PsiMinus;
  PmKind kind = PmKind::TypeII;

  [[nodiscard]] const CrystalComb& crystal(int alpha) const { return crystals[alpha - 1]; }
  /// sum over both crystals of |A_j|^2
  [[nodiscard]] double total_power() const;
};

/// dk_{j,alpha} = j Omega_alpha (n_g,s - n_g,i)/c, group indices at the centre frequencies
/// in crystal alpha's own frame, rad/m.
double comb_mismatch(const SourceConfig& cfg, int alpha, long j);
double comb_mismatch(const SourceConfig& cfg, int alpha, long j, Frequency spacing);

/// l_alpha |dk_{1,alpha}| / 2 with the single-pass crystal length.
double comb_phase_step(const SourceConfig& cfg, int alpha, Frequency spacing);

/// Unnormalized comb sinc(j x1), j in [-N, N].
CrystalComb sinc_comb(double phase_step, Frequency spacing, const TruncationPolicy& policy,
                      bool single_mode = false);

/// Both combs from the first-order cluster spacings, jointly normalized, crystal-2 phase set
/// by the target.
AmplitudeComb build_comb(const SourceConfig& cfg, BellTarget target,
                         const TruncationPolicy& policy = {});
AmplitudeComb build_comb_from_steps(double phase_step1, double phase_step2, BellTarget target,
                                    PmKind kind, const TruncationPolicy& policy = {});

/// |A_0|^2 / sum_j |A_j|^2 for crystal alpha.
double single_crystal_fidelity(const AmplitudeComb& comb, int alpha);
/// |<Psi|target>|^2 at the centre frequencies. Throws IncompatibleTarget.
double bell_fidelity(const AmplitudeComb& comb, BellTarget target);

/// Single-crystal fidelity as a function of cluster spacing over SPDC bandwidth.
double fidelity_for_ratio(double ratio, const TruncationPolicy& policy = {});

}  // namespace cavspdc
