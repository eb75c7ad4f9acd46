#include "doctest.h"
#include "support.hpp"

#include "cavspdc/error.hpp"
#include "cavspdc/phasematch.hpp"

using namespace cavspdc;
using testing::rel;

namespace {

const auto kSignal = angular_from_wavelength(nanometres(780.24));
const auto kIdler = angular_from_wavelength(nanometres(1550));

CrystalSpec crystal(double mm = 10.0) {
  CrystalSpec c;
  c.material = testing::ppln();
  c.length = millimetres(mm);
  return c;
}

SpdcProcess matched(const PmType& pm, double mm = 10.0, int passes = 2) {
  auto p = SpdcProcess::from_signal_idler(kSignal, kIdler, crystal(mm), pm, passes);
  return p.with_crystal(phase_matched_crystal(p));
}

}  // namespace

TEST_SUITE("phasematch") {

TEST_CASE("energy conservation is exact") {
  for (int i = 0; i < 500; ++i) {
    const auto p = angular_from_wavelength(nanometres(500 + 0.37 * i));
    const auto s = angular_from_wavelength(nanometres(800 + 1.91 * i));
    const auto a = SpdcProcess::from_pump_signal(p, s, crystal(), PmType::type_ii());
    CHECK(a.signal().si() + a.idler().si() == a.pump().si());
    const auto b = SpdcProcess::from_signal_idler(s, a.idler(), crystal(), PmType::type0());
    CHECK(b.signal().si() + b.idler().si() == b.pump().si());
    const auto d = a.detuned(rad_per_s(1e11 * (i - 250)));
    CHECK(d.signal().si() + d.idler().si() == d.pump().si());
    CHECK(d.pump() == a.pump());
  }
}

// periods from an independent evaluation of the coefficient file
TEST_CASE("poling periods match the frozen oracle") {
  const auto t2 = SpdcProcess::from_signal_idler(kSignal, kIdler, crystal(), PmType::type_ii());
  const auto t0 = SpdcProcess::from_signal_idler(kSignal, kIdler, crystal(), PmType::type0());
  const auto s2 = solve_poling_period(t2.pump(), t2.signal(), t2.pm(), crystal(), kelvin(298.15));
  const auto s0 = solve_poling_period(t0.pump(), t0.signal(), t0.pm(), crystal(), kelvin(298.15));
  CHECK(s2.period.si() == doctest::Approx(4.613604439740822e-06).epsilon(1e-12));
  CHECK(s0.period.si() == doctest::Approx(7.088235383833499e-06).epsilon(1e-12));
  CHECK(s2.grating_sign == -1);
}

TEST_CASE("matched crystals have vanishing mismatch") {
  for (const auto& pm : {PmType::type_ii(), PmType::type0(), PmType::type0(Axis::Ordinary), PmType::type_i()}) {
    const auto p = matched(pm);
    const double grating = kTwoPi / p.crystal().period_at_temperature().si();
    CHECK(std::abs(phase_mismatch(p)) < 1e-9 * grating);
    CHECK(material_mismatch(p) == doctest::Approx(p.crystal().grating_sign * grating).epsilon(1e-12));
  }
}

TEST_CASE("period moves with temperature") {
  auto c = crystal();
  const auto hot = solve_poling_period(kSignal + kIdler, kSignal, PmType::type_ii(), c, kelvin(360));
  CHECK(hot.period_at_reference.si() == doctest::Approx(hot.period.si() / c.model().expansion_factor(kelvin(360))));
  c.poling_period = hot.period_at_reference;
  c.temperature = kelvin(360);
  const auto p = SpdcProcess::from_pump_signal(kSignal + kIdler, kSignal, c, PmType::type_ii());
  CHECK(std::abs(phase_mismatch(p)) < 1e-9 * kTwoPi / hot.period.si());
}

TEST_CASE("linear bandwidth agrees with the full scan") {
  for (const auto& pm : {PmType::type_ii(), PmType::type0()}) {
    const auto p = matched(pm);
    CHECK(rel(spdc_bandwidth(p).si(), spdc_bandwidth_scan(p).si()) < 0.02);
    CHECK(rel(spdc_bandwidth_second_order(p).si(), spdc_bandwidth_scan(p).si()) < 0.02);
  }
}

TEST_CASE("bandwidth scales inversely with length and passes") {
  const auto a = spdc_bandwidth(matched(PmType::type_ii(), 5.0)).si();
  const auto b = spdc_bandwidth(matched(PmType::type_ii(), 10.0)).si();
  const auto c = spdc_bandwidth(matched(PmType::type_ii(), 10.0, 1)).si();
  CHECK(a == doctest::Approx(2 * b).epsilon(1e-12));
  CHECK(c == doctest::Approx(2 * b).epsilon(1e-12));
}

TEST_CASE("bandwidth formula") {
  const auto p = matched(PmType::type_ii());
  const double expected = 2 * 2 * kXiHwhm / (p.effective_length().si() * std::abs(mismatch_slope(p))) / kTwoPi;
  CHECK(spdc_bandwidth(p).si() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::sin(kXiHwhm) * std::sin(kXiHwhm) / (kXiHwhm * kXiHwhm) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("slope and curvature agree with differences of the full mismatch") {
  for (const auto& pm : {PmType::type_ii(), PmType::type0()}) {
    const auto p = matched(pm);
    const double h = 1e-5 * p.signal().si();
    const double up = phase_mismatch(p.detuned(rad_per_s(h))), dn = phase_mismatch(p.detuned(rad_per_s(-h)));
    CHECK(rel(mismatch_slope(p), (up - dn) / (2 * h)) < 1e-5);
    CHECK(rel(mismatch_curvature(p), (up - 2 * phase_mismatch(p) + dn) / (h * h)) < 1e-3);
  }
}

TEST_CASE("exact degeneracy in one polarization has no linear term") {
  const auto pump = angular_from_wavelength(nanometres(775));
  auto p = SpdcProcess::from_pump_signal(pump, pump / 2.0, crystal(), PmType::type0());
  p = p.with_crystal(phase_matched_crystal(p));
  CHECK(mismatch_slope(p) == 0.0);
  try {
    (void)spdc_bandwidth(p);
    FAIL("expected DegenerateSlope");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateSlope);
  }
  const double bw2 = spdc_bandwidth_second_order(p).si();
  CHECK(rel(bw2, spdc_bandwidth_scan(p).si()) < 0.05);
  CHECK(bw2 > 1e12);
}

TEST_CASE("temperature slope agrees with differences") {
  const auto p = matched(PmType::type_ii());
  auto at = [&](double t) {
    auto c = p.crystal();
    c.temperature = kelvin(t);
    return phase_mismatch(p.with_crystal(c));
  };
  const double h = 0.01;
  CHECK(rel(temperature_detuning_slope(p), (at(298.15 + h) - at(298.15 - h)) / (2 * h)) < 1e-6);
}

TEST_CASE("type II sees the rotated frame in the second crystal") {
  const auto r = PmType::type_ii().rotated();
  CHECK(r.pump == Axis::Extraordinary);
  CHECK(r.signal == Axis::Extraordinary);
  CHECK(r.idler == Axis::Ordinary);
  CHECK(PmType::type0().rotated().signal == Axis::Ordinary);
}

}
