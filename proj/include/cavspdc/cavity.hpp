#pragma once

#include <string>
#include <vector>

#include "cavspdc/units.hpp"

namespace cavspdc {

struct LossEntry {
  std::string label;
  double loss = 0.0;  // per pass, [0, 1)
  int passes = 1;     // per round trip
};

struct LossBudget {
  double multiplicative = 0.0;  // 1 - prod (1 - loss)^passes
  double additive = 0.0;        // sum loss * passes
};

LossBudget loss_budget(const std::vector<LossEntry>& ledger);

struct CavitySpec {
  double R1 = 0.9998;
  double R2 = 0.9998;
  double eta = 0.0;  // round-trip intracavity loss
  Length effective_length = millimetres(53.0);
  std::vector<LossEntry> ledger;

  /// Cavity whose eta is composed from the ledger.
  static CavitySpec from_ledger(double r1, double r2, Length l_eff, std::vector<LossEntry> ledger);
};

/// x = R1 R2 (1 - eta)
double round_trip_survival(const CavitySpec& spec);
/// pi / arccos((4 sqrt x - x - 1)/(2 sqrt x)). Infinite at x = 1; throws InvalidReflectivity.
double finesse(const CavitySpec& spec);
double finesse_from_survival(double x);
/// c / (2 L_eff)
Frequency cavity_fsr(Length effective_length);
/// FSR / finesse. Throws InfiniteFinesse.
Frequency linewidth(const CavitySpec& spec);
/// c / (2 L Delta nu)
double required_finesse(Length effective_length, Frequency target_linewidth);

struct IntracavityElement {
  Length length;
  double index = 1.0;
};

/// L_geometric + sum l_i (n_i - 1). The mirror radius of curvature is recorded by callers only;
/// the focusing optimum that would relate it to L_geometric is not modelled.
Length effective_length(Length geometric_length, const std::vector<IntracavityElement>& elements);

}  // namespace cavspdc
