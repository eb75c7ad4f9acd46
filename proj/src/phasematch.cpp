#include "cavspdc/phasematch.hpp"

#include <algorithm>
#include <cmath>

#include "cavspdc/error.hpp"
#include "roots.hpp"

namespace cavspdc {

std::string_view to_string(PmKind k) {
  switch (k) {
    case PmKind::Type0: return "type-0";
    case PmKind::TypeI: return "type-i";
    case PmKind::TypeII: return "type-ii";
  }
  return "?";
}

PmType PmType::type0(Axis axis) { return {PmKind::Type0, axis, axis, axis}; }
PmType PmType::type_i() {
  return {PmKind::TypeI, Axis::Extraordinary, Axis::Ordinary, Axis::Ordinary};
}
PmType PmType::type_ii() {
  return {PmKind::TypeII, Axis::Ordinary, Axis::Ordinary, Axis::Extraordinary};
}
PmType PmType::rotated() const {
  return {kind, orthogonal(pump), orthogonal(signal), orthogonal(idler)};
}

const DispersionModel& CrystalSpec::model() const {
  if (!material) throw Error(Errc::InvalidArgument, "crystal has no material");
  return *material;
}

Length CrystalSpec::length_at_temperature() const {
  return length * model().expansion_factor(temperature);
}

Length CrystalSpec::period_at_temperature() const {
  return poled_period(model(), poling_period, temperature);
}

SpdcProcess::SpdcProcess(AngularFrequency p, AngularFrequency s, CrystalSpec c, PmType pm,
                         int passes)
    : crystal_(std::move(c)), pm_(pm), passes_(passes) {
  if (!(p.si() > 0.0) || !(s.si() > 0.0) || !(s < p))
    throw Error(Errc::InvalidArgument, "need 0 < signal < pump");
  if (passes != 1 && passes != 2) throw Error(Errc::InvalidArgument, "passes must be 1 or 2");
  if (!(crystal_.length.si() > 0.0)) throw Error(Errc::InvalidArgument, "crystal length must be > 0");
  // i = p - s, then s = p - i: one of the two subtractions is exact, so s + i == p.
  pump_ = p;
  idler_ = p - s;
  signal_ = p - idler_;
}

SpdcProcess SpdcProcess::from_pump_signal(AngularFrequency pump, AngularFrequency signal,
                                          CrystalSpec crystal, PmType pm, int passes) {
  return SpdcProcess(pump, signal, std::move(crystal), pm, passes);
}

SpdcProcess SpdcProcess::from_signal_idler(AngularFrequency signal, AngularFrequency idler,
                                           CrystalSpec crystal, PmType pm, int passes) {
  return SpdcProcess(signal + idler, signal, std::move(crystal), pm, passes);
}

Length SpdcProcess::effective_length() const {
  return crystal_.length_at_temperature() * static_cast<double>(passes_);
}

SpdcProcess SpdcProcess::detuned(AngularFrequency delta) const {
  return SpdcProcess(pump_, signal_ + delta, crystal_, pm_, passes_);
}

SpdcProcess SpdcProcess::with_crystal(CrystalSpec crystal) const {
  return SpdcProcess(pump_, signal_, std::move(crystal), pm_, passes_);
}

namespace {

struct Triple {
  IndexPoint p, s, i;
};

Triple indices(const SpdcProcess& proc) {
  const auto& m = proc.crystal().model();
  const auto t = proc.crystal().temperature;
  return {m.evaluate(proc.pm().pump, proc.pump(), t), m.evaluate(proc.pm().signal, proc.signal(), t),
          m.evaluate(proc.pm().idler, proc.idler(), t)};
}

double material_mismatch_of(const Triple& n, const SpdcProcess& proc) {
  return (n.s.n * proc.signal().si() + n.i.n * proc.idler().si() - n.p.n * proc.pump().si()) /
         kSpeedOfLight;
}

}  // namespace

double material_mismatch(const SpdcProcess& proc) { return material_mismatch_of(indices(proc), proc); }

double phase_mismatch(const SpdcProcess& proc) {
  const auto& c = proc.crystal();
  return material_mismatch(proc) - c.grating_sign * kTwoPi / c.period_at_temperature().si();
}

PolingSolution solve_poling_period(AngularFrequency pump, AngularFrequency signal, const PmType& pm,
                                   const CrystalSpec& crystal_template, Temperature t) {
  CrystalSpec c = crystal_template;
  c.temperature = t;
  auto proc = SpdcProcess::from_pump_signal(pump, signal, c, pm, 1);
  const double dk = material_mismatch(proc);
  if (!std::isfinite(dk) || dk == 0.0)
    throw Error(Errc::NoPositivePeriod, "material mismatch is zero; no finite poling period");
  const int sign = dk > 0.0 ? 1 : -1;
  const Length period = metres(kTwoPi / std::abs(dk));
  return {period, period / c.model().expansion_factor(t), sign};
}

CrystalSpec phase_matched_crystal(const SpdcProcess& proc) {
  auto sol = solve_poling_period(proc.pump(), proc.signal(), proc.pm(), proc.crystal(),
                                 proc.crystal().temperature);
  CrystalSpec c = proc.crystal();
  c.poling_period = sol.period_at_reference;
  c.grating_sign = sol.grating_sign;
  return c;
}

double mismatch_slope(const SpdcProcess& proc) {
  auto n = indices(proc);
  return (n.s.group_index(proc.signal()) - n.i.group_index(proc.idler())) / kSpeedOfLight;
}

double mismatch_curvature(const SpdcProcess& proc) {
  auto n = indices(proc);
  auto k2 = [](const IndexPoint& p, AngularFrequency w) {
    return (2.0 * p.dn_domega + w.si() * p.d2n_domega2) / kSpeedOfLight;
  };
  return k2(n.s, proc.signal()) + k2(n.i, proc.idler());
}

Frequency spdc_bandwidth(const SpdcProcess& proc) {
  const double a = mismatch_slope(proc);
  const double target = 2.0 * kXiHwhm / proc.effective_length().si();
  if (a == 0.0) throw Error(Errc::DegenerateSlope, "group indices of signal and idler coincide");
  const double delta = target / std::abs(a);
  const double b = mismatch_curvature(proc);
  if (std::abs(b) * delta > std::abs(a))
    throw Error(Errc::DegenerateSlope,
                "linear bandwidth expansion invalid: quadratic term exceeds half the linear term");
  return hertz(2.0 * delta / kTwoPi);
}

Frequency spdc_bandwidth_second_order(const SpdcProcess& proc) {
  const double a = mismatch_slope(proc);
  const double b = mismatch_curvature(proc);
  const double target = 2.0 * kXiHwhm / proc.effective_length().si();
  double half[2];
  for (int side = 0; side < 2; ++side) {
    const double sa = side == 0 ? a : -a;
    double best = kInfinity;
    for (double rhs : {target, -target}) {
      double r[2];
      int nr = detail::solve_quadratic(0.5 * b, sa, -rhs, r);
      for (int k = 0; k < nr; ++k)
        if (r[k] > 0.0 && std::isfinite(r[k])) best = std::min(best, r[k]);
    }
    if (!std::isfinite(best))
      throw Error(Errc::NoRealRoot, "second-order bandwidth has no positive root");
    half[side] = best;
  }
  return hertz((half[0] + half[1]) / kTwoPi);
}

Frequency spdc_bandwidth_scan(const SpdcProcess& proc) {
  const double l_half = 0.5 * proc.effective_length().si();
  auto excess = [&](double delta) {
    return std::abs(phase_mismatch(proc.detuned(rad_per_s(delta)))) * l_half - kXiHwhm;
  };
  if (excess(0.0) >= 0.0)
    throw Error(Errc::InvalidArgument, "process is not phase matched at its centre frequencies");
  const double a = std::abs(mismatch_slope(proc));
  double seed = a > 0.0 ? kXiHwhm / (l_half * a) : 1e-4 * proc.signal().si();
  seed = std::min(seed, 1e-3 * proc.signal().si());
  double halves[2];
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? 1.0 : -1.0;
    auto g = [&](double d) { return excess(sgn * d); };
    double lo = 0.0;
    double hi = 0.05 * seed;
    int steps = 0;
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 1.25;
      if (++steps > 400) throw Error(Errc::NoRealRoot, "half maximum not bracketed");
    }
    auto root = detail::bisect(g, lo, hi, 1e-13);
    if (!root) throw Error(Errc::NoRealRoot, "half maximum not bracketed");
    halves[side] = *root;
  }
  return hertz((halves[0] + halves[1]) / kTwoPi);
}

double temperature_detuning_slope(const SpdcProcess& proc) {
  auto n = indices(proc);
  const auto& c = proc.crystal();
  const double thermo = (n.s.dn_dT * proc.signal().si() + n.i.dn_dT * proc.idler().si() -
                         n.p.dn_dT * proc.pump().si()) /
                        kSpeedOfLight;
  const double period = c.period_at_temperature().si();
  const double dperiod = c.poling_period.si() * c.model().expansion_factor_derivative(c.temperature);
  return thermo + c.grating_sign * kTwoPi * dperiod / (period * period);
}

}  // namespace cavspdc
