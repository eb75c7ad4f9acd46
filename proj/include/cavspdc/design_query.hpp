#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavspdc/sweep.hpp"

namespace cavspdc {

struct DesignConstraints {
  std::string scenario = "non-degenerate";  // built-in name
  std::string scenario_file;                // used instead when non-empty
  double target_linewidth_Hz = 4e6;         // upper bound on the cavity linewidth
  double target_fidelity = 0.9;             // lower bound on the Bell-state fidelity
  SweepAxis length_ratio{"source.length_ratio", 0.05, 0.95, 19};
  SweepAxis delay{"source.delay_m", 0.0, 1e-3, 21};
  std::vector<double> reflectivities{0.999, 0.9995, 0.9998};
  std::vector<double> effective_lengths_m{0.03, 0.053, 0.1};
};

/// Strict JSON. Keys: scenario | scenario_file, target_linewidth_Hz, target_fidelity,
/// grid { length_ratio, delay_m: {start, stop, points|step}; R, L_eff_m: [values] }.
DesignConstraints parse_constraints(std::string_view text);

struct SourceCandidate {
  double length_ratio = 0.0;
  double delay_m = 0.0;
  Cell fidelity_bell;
  Cell joint;
  bool feasible = false;
};

struct CavityCandidate {
  double R = 0.0;
  double L_eff_m = 0.0;
  double eta = 0.0;
  Cell finesse;
  Cell linewidth;
  bool feasible = false;
};

struct DesignReport {
  DesignConstraints constraints;
  std::vector<SourceCandidate> sources;
  std::vector<CavityCandidate> cavities;
  std::size_t feasible_cells = 0;  // source x cavity combinations meeting both bounds
  std::size_t total_cells = 0;
  std::vector<std::string> diagnosis;  // empty when feasible
  std::optional<SourceCandidate> recommended_source;
  std::optional<CavityCandidate> recommended_cavity;
  std::vector<std::pair<std::string, std::string>> provenance;

  [[nodiscard]] bool feasible() const { return feasible_cells > 0; }
  /// Whether the grid point closest to the given values is in the feasible region.
  [[nodiscard]] bool contains(double ratio, double delay_m, double R, double L_eff_m) const;
};

DesignReport design_query(const DesignConstraints& c, const Scenario& scenario, unsigned workers = 1);
DesignReport design_query(const DesignConstraints& c, unsigned workers = 1,
                          MaterialPtr material_override = nullptr);

std::string to_json(const DesignReport& r);
std::string summary(const DesignReport& r);

}  // namespace cavspdc
