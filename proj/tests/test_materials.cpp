#include "doctest.h"
#include "support.hpp"

#include "cavspdc/error.hpp"
#include "cavspdc/materials.hpp"

using namespace cavspdc;
using testing::rel;

TEST_SUITE("materials") {

// independent evaluation of the same coefficient set, 1550 nm, 25 C
TEST_CASE("indices match the frozen oracle") {
  const auto m = testing::ppln();
  CHECK(refractive_index(*m, Axis::Ordinary, nanometres(1550), kelvin(298.15)) ==
        doctest::Approx(2.2088684121784823).epsilon(1e-13));
  CHECK(refractive_index(*m, Axis::Extraordinary, nanometres(1550), kelvin(298.15)) ==
        doctest::Approx(2.130703032091356).epsilon(1e-13));
}

TEST_CASE("analytic derivatives agree with central differences") {
  for (const char* name : {"mgo-ppln", "mgo-ln-zelmon"}) {
    const auto m = MaterialRegistry::builtin().find(name);
    const double t = std::string(name) == "mgo-ppln" ? 330.0 : 300.0;
    for (auto axis : {Axis::Ordinary, Axis::Extraordinary})
      for (double lam : {0.6e-6, 0.775e-6, 1.064e-6, 1.55e-6, 3.0e-6}) {
        CAPTURE(name);
        CAPTURE(lam);
        const auto w = angular_from_wavelength(metres(lam));
        const auto p = m->evaluate(axis, w, kelvin(t));
        const double h = w.si() * 1e-5;
        const auto up = m->evaluate(axis, rad_per_s(w.si() + h), kelvin(t));
        const auto dn = m->evaluate(axis, rad_per_s(w.si() - h), kelvin(t));
        CHECK(rel(p.dn_domega, (up.n - dn.n) / (2 * h)) < 1e-6);
        CHECK(rel(p.d2n_domega2, (up.dn_domega - dn.dn_domega) / (2 * h)) < 1e-6);
        const double fd_t = (m->evaluate(axis, w, kelvin(t + 0.01)).n - m->evaluate(axis, w, kelvin(t - 0.01)).n) / 0.02;
        if (p.dn_dT == 0.0) CHECK(std::abs(fd_t) < 1e-15);
        else CHECK(rel(p.dn_dT, fd_t) < 1e-6);
      }
  }
}

TEST_CASE("document round trip is bit-identical") {
  for (const auto& name : MaterialRegistry::builtin().names()) {
    const auto m = MaterialRegistry::builtin().find(name);
    const auto copy = DispersionModel::from_document(m->to_document());
    CHECK(copy.to_document() == m->to_document());
    CHECK(copy.content_hash() == m->content_hash());
    const auto w = angular_from_wavelength(nanometres(1200));
    CHECK(copy.evaluate(Axis::Extraordinary, w, kelvin(300)).n == m->evaluate(Axis::Extraordinary, w, kelvin(300)).n);
  }
}

TEST_CASE("hash changes with any coefficient") {
  const auto m = testing::ppln();
  auto doc = m->to_document();
  const auto at = doc.find("189.32");
  REQUIRE(at != std::string::npos);
  doc.replace(at, 6, "189.33");
  CHECK(DispersionModel::from_document(doc).content_hash() != m->content_hash());
}

TEST_CASE("validity range is enforced") {
  const auto m = testing::ppln();
  auto code = [&](Length l, Temperature t) {
    try {
      (void)refractive_index(*m, Axis::Ordinary, l, t);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code(nanometres(400), kelvin(300)) == Errc::OutOfValidityRange);
  CHECK(code(nanometres(5000), kelvin(300)) == Errc::OutOfValidityRange);
  CHECK(code(nanometres(1000), kelvin(600)) == Errc::OutOfValidityRange);
  CHECK_NOTHROW((void)refractive_index(*m, Axis::Ordinary, nanometres(1000), kelvin(400)));
}

TEST_CASE("strict parsing") {
  const auto doc = testing::ppln()->to_document();
  auto extra = doc;
  extra.insert(doc.find('{') + 1, "\"colour\": 1,");
  CHECK_THROWS_AS(DispersionModel::from_document(extra), Error);
  CHECK_THROWS_AS(DispersionModel::from_document("{"), Error);
  auto missing = doc;
  missing.replace(missing.find("\"a5\""), 4, "\"a9\"");
  CHECK_THROWS_AS(DispersionModel::from_document(missing), Error);
}

TEST_CASE("thermal expansion") {
  const auto m = testing::ppln();
  CHECK(m->expansion_factor(kelvin(298.15)) == 1.0);
  const double t = 350.0, h = 0.01;
  CHECK(rel(m->expansion_factor_derivative(kelvin(t)),
            (m->expansion_factor(kelvin(t + h)) - m->expansion_factor(kelvin(t - h))) / (2 * h)) < 1e-6);
  CHECK(poled_period(*m, micrometres(7), kelvin(348.15)).si() ==
        doctest::Approx(7e-6 * (1 + 1.54e-5 * 50 + 5.3e-9 * 2500)).epsilon(1e-14));
}

TEST_CASE("registry") {
  const auto names = MaterialRegistry::builtin().names();
  CHECK(names.size() >= 2);
  CHECK_THROWS_AS((void)MaterialRegistry::builtin().find("unobtainium"), Error);
}

}
