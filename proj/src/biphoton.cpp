#include "cavspdc/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "cavspdc/error.hpp"
#include "cavspdc/kernels/comb.hpp"

namespace cavspdc {

std::string_view to_string(BellTarget t) {
  switch (t) {
    case BellTarget::PsiMinus: return "psi-minus";
    case BellTarget::PsiPlus: return "psi-plus";
    case BellTarget::PhiMinus: return "phi-minus";
    case BellTarget::PhiPlus: return "phi-plus";
  }
  return "?";
}

BellTarget parse_bell_target(std::string_view s) {
  for (auto t : {BellTarget::PsiMinus, BellTarget::PsiPlus, BellTarget::PhiMinus, BellTarget::PhiPlus})
    if (s == to_string(t)) return t;
  throw Error(Errc::InvalidArgument, "unknown Bell target '" + std::string(s) + "'");
}

bool is_compatible(BellTarget t, PmKind k) {
  const bool psi = t == BellTarget::PsiMinus || t == BellTarget::PsiPlus;
  return psi == (k == PmKind::TypeII);
}

double target_phase(BellTarget t) {
  return (t == BellTarget::PsiMinus || t == BellTarget::PhiMinus) ? -1.0 : 1.0;
}

std::size_t truncation_terms(double phase_step, const TruncationPolicy& policy, bool single_mode) {
  if (single_mode) return 0;
  if (policy.fixed_terms) return *policy.fixed_terms;
  const double x = std::abs(phase_step);
  if (x == 0.0) return policy.max_terms;
  if (std::isinf(x)) return 0;
  // |sinc(j x)| <= 1/(j x): the two tails beyond N carry at most 2/(x^2 N).
  const double x2 = x * x;
  if (std::numbers::pi * std::numbers::pi / (3.0 * x2) <= policy.tail_tolerance) return 0;
  const double n = std::ceil(2.0 / (x2 * policy.tail_tolerance));
  return n >= static_cast<double>(policy.max_terms) ? policy.max_terms : static_cast<std::size_t>(n);
}

double CrystalComb::power() const {
  return kernels::sum_squares(amplitudes.data(), amplitudes.size());
}

double AmplitudeComb::total_power() const { return crystals[0].power() + crystals[1].power(); }

double comb_mismatch(const SourceConfig& cfg, int alpha, long j, Frequency spacing) {
  if (j == 0) return 0.0;
  const auto proc = cfg.process(alpha);
  return static_cast<double>(j) * to_angular(spacing).si() * mismatch_slope(proc);
}

double comb_mismatch(const SourceConfig& cfg, int alpha, long j) {
  return comb_mismatch(cfg, alpha, j, cluster_spacing_first_order(cfg, alpha));
}

double comb_phase_step(const SourceConfig& cfg, int alpha, Frequency spacing) {
  const auto proc = cfg.process(alpha);
  if (is_infinite(spacing)) return kInfinity;
  return 0.5 * proc.crystal().length_at_temperature().si() *
         std::abs(to_angular(spacing).si() * mismatch_slope(proc));
}

CrystalComb sinc_comb(double phase_step, Frequency spacing, const TruncationPolicy& policy,
                      bool single_mode) {
  CrystalComb c;
  c.spacing = spacing;
  c.phase_step = std::abs(phase_step);
  c.terms = truncation_terms(phase_step, policy, single_mode);
  const std::size_t n = c.terms;
  c.amplitudes.assign(2 * n + 1, 0.0);
  // one-sided fill into the upper half, mirrored below (sinc is even)
  kernels::fill_sinc_comb(c.phase_step, n + 1, c.amplitudes.data() + n);
  for (std::size_t j = 1; j <= n; ++j) c.amplitudes[n - j] = c.amplitudes[n + j];
  return c;
}

namespace {

AmplitudeComb normalize(CrystalComb c1, CrystalComb c2, BellTarget target, PmKind kind) {
  AmplitudeComb comb;
  comb.crystals = {std::move(c1), std::move(c2)};
  comb.target = target;
  comb.kind = kind;
  comb.crystal2_phase = target_phase(target);
  const double scale = 1.0 / std::sqrt(comb.total_power());
  for (auto& c : comb.crystals)
    for (auto& a : c.amplitudes) a *= scale;
  return comb;
}

}  // namespace

AmplitudeComb build_comb_from_steps(double phase_step1, double phase_step2, BellTarget target,
                                    PmKind kind, const TruncationPolicy& policy) {
  return normalize(sinc_comb(phase_step1, infinite_frequency(), policy, policy.single_mode[0]),
                   sinc_comb(phase_step2, infinite_frequency(), policy, policy.single_mode[1]),
                   target, kind);
}

AmplitudeComb build_comb(const SourceConfig& cfg, BellTarget target, const TruncationPolicy& policy) {
  std::array<CrystalComb, 2> combs;
  for (int alpha = 1; alpha <= 2; ++alpha) {
    const Frequency spacing = cluster_spacing_first_order(cfg, alpha);
    combs[alpha - 1] = sinc_comb(comb_phase_step(cfg, alpha, spacing), spacing, policy,
                                 policy.single_mode[alpha - 1]);
  }
  return normalize(std::move(combs[0]), std::move(combs[1]), target, cfg.pm.kind);
}

double single_crystal_fidelity(const AmplitudeComb& comb, int alpha) {
  const auto& c = comb.crystal(alpha);
  const double a0 = c.at(0);
  return a0 * a0 / c.power();
}

double bell_fidelity(const AmplitudeComb& comb, BellTarget target) {
  if (!is_compatible(target, comb.kind))
    throw Error(Errc::IncompatibleTarget, std::string(to_string(target)) + " is not reachable with " +
                                              std::string(to_string(comb.kind)) + " phase matching");
  const std::complex<double> t(target_phase(target), 0.0);
  const std::complex<double> p(comb.crystal2_phase, 0.0);
  const std::complex<double> overlap =
      (comb.crystal(1).at(0) + std::conj(t) * p * comb.crystal(2).at(0)) / std::sqrt(2.0);
  return std::min(1.0, std::norm(overlap) / comb.total_power());
}

double fidelity_for_ratio(double ratio, const TruncationPolicy& policy) {
  if (!(ratio > 0.0)) throw Error(Errc::InvalidArgument, "ratio must be > 0");
  const auto c = sinc_comb(kXiHwhm * ratio, infinite_frequency(), policy);
  return 1.0 / c.power();
}

}  // namespace cavspdc
