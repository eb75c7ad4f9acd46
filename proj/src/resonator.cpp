#include "cavspdc/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cavspdc/error.hpp"
#include "roots.hpp"

namespace cavspdc {

void SourceConfig::set_pump_signal(AngularFrequency p, AngularFrequency s) {
  pump = p;
  idler = p - s;
  signal = p - idler;
}

void SourceConfig::set_signal_idler(AngularFrequency s, AngularFrequency i) {
  set_pump_signal(s + i, s);
}

void SourceConfig::set_temperature(Temperature t) {
  crystal1.temperature = t;
  crystal2.temperature = t;
}

void SourceConfig::set_idler_delay(Length dl) {
  extra_delay[index_of(ModeId::M2)] = dl;
  extra_delay[index_of(ModeId::M4)] = dl;
}

void SourceConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(Errc::InvalidArgument, msg); };
  if (!crystal1.material || !crystal2.material) fail("both crystals need a material");
  if (!(crystal1.length.si() > 0.0)) fail("crystal 1 length must be > 0");
  if (!(crystal2.length.si() > 0.0)) fail("crystal 2 length must be > 0");
  if (!(air.si() >= 0.0)) fail("air path must be >= 0");
  for (int j = 0; j < 4; ++j)
    if (!(extra_delay[j].si() >= 0.0)) fail("extra delay of mode " + std::to_string(j + 1) + " must be >= 0");
  if (!(signal.si() > 0.0 && idler.si() > 0.0)) fail("signal and idler frequencies must be > 0");
  if (signal.si() + idler.si() != pump.si()) fail("pump must equal signal + idler");
}

SpdcProcess SourceConfig::process(int crystal, int passes) const {
  return SpdcProcess::from_pump_signal(pump, signal, crystal == 1 ? crystal1 : crystal2, pm, passes);
}

SourceConfig SourceConfig::phase_matched() const {
  SourceConfig out = *this;
  out.crystal1 = phase_matched_crystal(process(1));
  out.crystal2 = phase_matched_crystal(process(2));
  return out;
}

AngularFrequency centre_frequency(const SourceConfig& cfg, ModeId mode) {
  return is_signal_mode(mode) ? cfg.signal : cfg.idler;
}

namespace {

// Lab polarization of each mode expressed as the axis it sees inside crystal 1.
Axis axis_in_crystal1(const SourceConfig& cfg, ModeId mode) {
  switch (mode) {
    case ModeId::M1: return cfg.pm.signal;
    case ModeId::M2: return cfg.pm.idler;
    case ModeId::M3: return orthogonal(cfg.pm.signal);
    case ModeId::M4: return orthogonal(cfg.pm.idler);
  }
  return cfg.pm.signal;
}

}  // namespace

ModeNumber mode_derivatives(const SourceConfig& cfg, ModeId mode, AngularFrequency w) {
  const Axis a1 = axis_in_crystal1(cfg, mode);
  const Axis a2 = orthogonal(a1);
  double path = cfg.air.si() + cfg.extra_delay[index_of(mode)].si();
  double path_w = 0.0, path_ww = 0.0, path_T = 0.0;
  auto add = [&](const CrystalSpec& c, Axis axis) {
    const auto& model = c.model();
    const auto n = model.evaluate(axis, w, c.temperature);
    const double s = model.expansion_factor(c.temperature);
    const double s_T = model.expansion_factor_derivative(c.temperature);
    const double l = c.length.si();
    path += l * s * n.n;
    path_w += l * s * n.dn_domega;
    path_ww += l * s * n.d2n_domega2;
    path_T += l * (s_T * n.n + s * n.dn_dT);
  };
  add(cfg.crystal1, a1);
  add(cfg.crystal2, a2);
  const double k = 1.0 / (std::numbers::pi * kSpeedOfLight);
  const double om = w.si();
  return {k * om * path, k * (path + om * path_w), k * (2.0 * path_w + om * path_ww),
          k * om * path_T};
}

double mode_number(const SourceConfig& cfg, ModeId mode, AngularFrequency w) {
  return mode_derivatives(cfg, mode, w).m;
}

Frequency fsr(const SourceConfig& cfg, ModeId mode, AngularFrequency w) {
  return hertz(1.0 / (kTwoPi * std::abs(mode_derivatives(cfg, mode, w).dm_domega)));
}

std::pair<ModeId, ModeId> modes_of_pair(int pair) {
  if (pair == 1) return {ModeId::M1, ModeId::M2};
  if (pair == 2) return {ModeId::M3, ModeId::M4};
  throw Error(Errc::InvalidArgument, "pair must be 1 or 2");
}

Frequency cluster_spacing_first_order(const SourceConfig& cfg, int pair) {
  auto [ma, mb] = modes_of_pair(pair);
  const double fa = fsr(cfg, ma, cfg.signal).si();
  const double fb = fsr(cfg, mb, cfg.idler).si();
  const double diff = std::abs(fa - fb);
  if (diff <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(fa, fb))
    return infinite_frequency();
  return hertz(fa * fb / diff);
}

Frequency joint_cluster_spacing(Frequency omega1, Frequency omega2) {
  const bool inf1 = is_infinite(omega1), inf2 = is_infinite(omega2);
  if (inf1 && inf2) return infinite_frequency();
  if (inf1) return omega2;
  if (inf2) return omega1;
  const double a = omega1.si(), b = omega2.si();
  const double diff = std::abs(a - b);
  if (diff <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(a, b))
    return infinite_frequency();
  return hertz(a * b / diff);
}

Frequency joint_cluster_spacing(const SourceConfig& cfg) {
  return joint_cluster_spacing(cluster_spacing_first_order(cfg, 1),
                               cluster_spacing_first_order(cfg, 2));
}

JointExpansion joint_expansion(const SourceConfig& cfg, int pair) {
  auto [ma, mb] = modes_of_pair(pair);
  const auto a = mode_derivatives(cfg, ma, cfg.signal);
  const auto b = mode_derivatives(cfg, mb, cfg.idler);
  return {a.dm_domega - b.dm_domega, a.d2m_domega2 + b.d2m_domega2, a.dm_dT + b.dm_dT};
}

Frequency cluster_spacing_second_order(const JointExpansion& e, double temperature_offset_K) {
  if (e.slope == 0.0 && e.curvature == 0.0) return infinite_frequency();
  double best = kInfinity;
  for (double rhs : {1.0, -1.0}) {
    double r[2];
    const int nr = detail::solve_quadratic(0.5 * e.curvature, e.slope,
                                           e.thermal * temperature_offset_K - rhs, r);
    for (int k = 0; k < nr; ++k)
      if (r[k] > 0.0 && std::isfinite(r[k])) best = std::min(best, r[k]);
  }
  if (!std::isfinite(best))
    throw Error(Errc::NoRealRoot, "second-order cluster spacing has no positive real root");
  return hertz(best / kTwoPi);
}

Frequency cluster_spacing_second_order(const SourceConfig& cfg, int pair,
                                       double temperature_offset_K) {
  return cluster_spacing_second_order(joint_expansion(cfg, pair), temperature_offset_K);
}

double temperature_sensitivity(const SourceConfig& cfg, int pair) {
  const auto e = joint_expansion(cfg, pair);
  if (e.slope == 0.0)
    throw Error(Errc::DegenerateSlope, "joint mode number has no first-order frequency slope");
  return -e.thermal / e.slope / kTwoPi;
}

}  // namespace cavspdc
