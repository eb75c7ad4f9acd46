#include "cavspdc/cavity.hpp"

#include <cmath>
#include <sstream>

#include "cavspdc/error.hpp"

namespace cavspdc {

LossBudget loss_budget(const std::vector<LossEntry>& ledger) {
  double survive = 1.0;
  double additive = 0.0;
  for (const auto& e : ledger) {
    if (!(e.loss >= 0.0 && e.loss < 1.0))
      throw Error(Errc::InvalidArgument, "loss of '" + e.label + "' must lie in [0, 1)");
    if (e.passes < 0) throw Error(Errc::InvalidArgument, "passes of '" + e.label + "' must be >= 0");
    survive *= std::pow(1.0 - e.loss, e.passes);
    additive += e.loss * e.passes;
  }
  return {1.0 - survive, additive};
}

CavitySpec CavitySpec::from_ledger(double r1, double r2, Length l_eff, std::vector<LossEntry> ledger) {
  CavitySpec s;
  s.R1 = r1;
  s.R2 = r2;
  s.effective_length = l_eff;
  s.eta = loss_budget(ledger).multiplicative;
  s.ledger = std::move(ledger);
  return s;
}

double round_trip_survival(const CavitySpec& spec) {
  auto in_unit = [](double r) { return r > 0.0 && r <= 1.0; };
  if (!in_unit(spec.R1) || !in_unit(spec.R2)) {
    std::ostringstream os;
    os << "mirror reflectivities must lie in (0, 1], got R1=" << spec.R1 << " R2=" << spec.R2;
    throw Error(Errc::InvalidReflectivity, os.str());
  }
  if (!(spec.eta >= 0.0 && spec.eta < 1.0))
    throw Error(Errc::InvalidReflectivity, "intracavity loss must lie in [0, 1)");
  return spec.R1 * spec.R2 * (1.0 - spec.eta);
}

double finesse_from_survival(double x) {
  if (!(x > 0.0 && x <= 1.0))
    throw Error(Errc::InvalidReflectivity, "R1 R2 (1 - eta) must lie in (0, 1]");
  if (x == 1.0) return kInfinity;
  // (4 sqrt x - x - 1)/(2 sqrt x) = 1 - eps, eps = (1 - sqrt x)^2 / (2 sqrt x);
  // arccos(1 - eps) = 2 asin(sqrt(eps / 2)).
  const double s = std::sqrt(x);
  const double eps = (1.0 - s) * (1.0 - s) / (2.0 * s);
  if (eps > 2.0)
    throw Error(Errc::InvalidReflectivity, "round-trip survival too small for a resonance");
  return std::numbers::pi / (2.0 * std::asin(std::sqrt(0.5 * eps)));
}

double finesse(const CavitySpec& spec) { return finesse_from_survival(round_trip_survival(spec)); }

Frequency cavity_fsr(Length effective_length) {
  if (!(effective_length.si() > 0.0))
    throw Error(Errc::InvalidArgument, "effective cavity length must be > 0");
  return hertz(kSpeedOfLight / (2.0 * effective_length.si()));
}

Frequency linewidth(const CavitySpec& spec) {
  const double f = finesse(spec);
  if (std::isinf(f)) throw Error(Errc::InfiniteFinesse, "lossless cavity has zero linewidth");
  return cavity_fsr(spec.effective_length) / f;
}

double required_finesse(Length effective_length, Frequency target_linewidth) {
  if (!(target_linewidth.si() > 0.0))
    throw Error(Errc::InvalidArgument, "target linewidth must be > 0");
  return cavity_fsr(effective_length) / target_linewidth;
}

Length effective_length(Length geometric_length, const std::vector<IntracavityElement>& elements) {
  Length l = geometric_length;
  for (const auto& e : elements) l += e.length * (e.index - 1.0);
  return l;
}

}  // namespace cavspdc
