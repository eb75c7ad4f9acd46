#include "doctest.h"
#include "support.hpp"

#include "cavspdc/cavity.hpp"
#include "cavspdc/error.hpp"

using namespace cavspdc;
using testing::rel;

namespace {

CavitySpec cavity(double r, double eta, double l = 0.053) {
  CavitySpec c;
  c.R1 = c.R2 = r;
  c.eta = eta;
  c.effective_length = metres(l);
  return c;
}

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST_SUITE("cavity") {

TEST_CASE("finesse approaches the high-reflectivity asymptote") {
  for (double x : {0.99, 0.999, 0.9999, 0.99999}) {
    const double asymptote = std::numbers::pi * std::pow(x, 0.25) / (1 - std::sqrt(x));
    CHECK(rel(finesse_from_survival(x), asymptote) < (1 - x));
  }
}

TEST_CASE("finesse against the arccos form") {
  for (double x : {0.3, 0.6, 0.9, 0.98}) {
    const double s = std::sqrt(x);
    CHECK(finesse_from_survival(x) == doctest::Approx(std::numbers::pi / std::acos((4 * s - x - 1) / (2 * s))).epsilon(1e-12));
  }
}

TEST_CASE("lossless cavity") {
  CHECK(std::isinf(finesse(cavity(1.0, 0.0))));
  CHECK(code_of([] { (void)linewidth(cavity(1.0, 0.0)); }) == Errc::InfiniteFinesse);
}

TEST_CASE("invalid inputs") {
  CHECK(code_of([] { (void)finesse(cavity(1.1, 0.0)); }) == Errc::InvalidReflectivity);
  CHECK(code_of([] { (void)finesse(cavity(0.0, 0.0)); }) == Errc::InvalidReflectivity);
  CHECK(code_of([] { (void)finesse(cavity(0.99, 1.0)); }) == Errc::InvalidReflectivity);
  CHECK(code_of([] { (void)finesse(cavity(0.99, -0.1)); }) == Errc::InvalidReflectivity);
  CHECK(code_of([] { (void)finesse(cavity(0.05, 0.0)); }) == Errc::InvalidReflectivity);
}

TEST_CASE("loss ledger") {
  const std::vector<LossEntry> ledger{{"AR face", 0.002, 4}};
  const auto b = loss_budget(ledger);
  CHECK(b.additive == doctest::Approx(0.008));
  CHECK(b.multiplicative == doctest::Approx(1 - std::pow(0.998, 4)).epsilon(1e-14));
  const auto c = CavitySpec::from_ledger(0.9998, 0.9998, millimetres(53), ledger);
  CHECK(c.eta == b.multiplicative);
  CHECK(round_trip_survival(c) == doctest::Approx(0.9998 * 0.9998 * std::pow(0.998, 4)).epsilon(1e-15));
  CHECK(linewidth(c).si() == doctest::Approx(3.785e6).epsilon(1e-3));
}

TEST_CASE("linewidth is FSR over finesse") {
  const auto c = cavity(0.9995, 0.004, 0.08);
  CHECK(cavity_fsr(metres(0.08)).si() == doctest::Approx(kSpeedOfLight / 0.16));
  CHECK(linewidth(c).si() == doctest::Approx(kSpeedOfLight / 0.16 / finesse(c)).epsilon(1e-14));
  CHECK(required_finesse(metres(0.08), linewidth(c)) == doctest::Approx(finesse(c)).epsilon(1e-12));
}

TEST_CASE("linewidth grows with loss, ordered by reflectivity") {
  double prev[3] = {0, 0, 0};
  for (int i = 0; i <= 50; ++i) {
    const double eta = 0.001 * i;
    const double a = linewidth(cavity(0.999, eta)).si();
    const double b = linewidth(cavity(0.9995, eta)).si();
    const double c = linewidth(cavity(0.9998, eta)).si();
    CHECK(a > b);
    CHECK(b > c);
    CHECK(a > prev[0]);
    CHECK(b > prev[1]);
    CHECK(c > prev[2]);
    prev[0] = a, prev[1] = b, prev[2] = c;
  }
}

TEST_CASE("effective length") {
  CHECK(effective_length(metres(0.04), {{metres(0.01), 2.2}, {metres(0.002), 1.5}}).si() ==
        doctest::Approx(0.04 + 0.012 + 0.001));
}

}
