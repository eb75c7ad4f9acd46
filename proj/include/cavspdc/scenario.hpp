#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cavspdc/biphoton.hpp"
#include "cavspdc/cavity.hpp"
#include "cavspdc/resonator.hpp"

namespace cavspdc {

inline constexpr std::string_view kVersion = "1.0.0";

/// Values that sweep axes may override. Parameter paths:
///   source.length_ratio  source.total_length_m  source.air_m  source.delay_m
///   source.temperature_K cavity.R  cavity.R1  cavity.R2  cavity.eta  cavity.L_eff_m
struct ScenarioPoint {
  double length_ratio = 0.4;
  double total_length_m = 0.01;
  double air_m = 0.0;
  double delay_m = 0.0;
  double temperature_K = 298.15;
  double R1 = 0.9998;
  double R2 = 0.9998;
  double eta = 0.0;
  double L_eff_m = 0.053;
};

const std::vector<std::string>& parameter_paths();
std::string_view parameter_unit(std::string_view path);
/// Throws ScenarioValidation for unknown paths.
void set_parameter(ScenarioPoint& p, std::string_view path, double value);
double get_parameter(const ScenarioPoint& p, std::string_view path);
/// Field-level checks; throws ScenarioValidation.
void validate_point(const ScenarioPoint& p);

/// type-0 (eee), type-0-ordinary (ooo), type-i, type-ii. Throws ScenarioValidation.
PmType parse_phase_matching(std::string_view s);
std::string phase_matching_name(const PmType& pm);

struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 1;

  [[nodiscard]] double value(std::size_t i) const;
};

/// Quantities a scenario can request. Some expand into one column per crystal.
enum class Output {
  Bandwidth1, Bandwidth2, Bandwidth1Second, Bandwidth2Second,
  Cluster1, Cluster2, Joint, Cluster1Second, Cluster2Second, JointSecond,
  FidelitySingle1, FidelitySingle2, FidelityBell,
  Finesse, Linewidth, Sensitivity1, Sensitivity2, PolingPeriod,
};

struct OutputColumn {
  std::string name;
  std::string unit;
  Output quantity;
};

/// Names accepted in "outputs": bandwidth, bandwidth_2nd, cluster1, cluster2, joint,
/// cluster1_2nd, cluster2_2nd, joint_2nd, fidelity_single, fidelity_bell, finesse, linewidth,
/// sensitivity, poling_period.
std::vector<OutputColumn> expand_outputs(const std::vector<std::string>& names);
const std::vector<std::string>& output_names();

struct Scenario {
  std::string name;
  std::string description;
  MaterialPtr material;
  PmType pm = PmType::type_ii();
  AngularFrequency pump;
  AngularFrequency signal;
  int passes = 2;
  ScenarioPoint base;
  std::vector<LossEntry> loss_ledger;
  BellTarget target = BellTarget::PsiMinus;
  TruncationPolicy truncation;
  std::vector<SweepAxis> axes;
  std::vector<std::string> outputs;
  std::vector<OutputColumn> columns;

  /// Canonical JSON of the resolved scenario; hashed into every emitted table.
  [[nodiscard]] std::string to_document() const;
  [[nodiscard]] std::uint64_t hash() const;
  /// Source configuration (QPM solved at the base temperature) at a point.
  [[nodiscard]] SourceConfig source_at(const ScenarioPoint& p) const;
  [[nodiscard]] CavitySpec cavity_at(const ScenarioPoint& p) const;
};

/// Strict parse; unknown keys and bad values raise ScenarioValidation with the field path.
/// `material_override` replaces the scenario's "material" entry when non-null.
Scenario parse_scenario(std::string_view text, const MaterialRegistry& registry,
                        MaterialPtr material_override = nullptr);
Scenario load_scenario(const std::filesystem::path& file, const MaterialRegistry& registry,
                       MaterialPtr material_override = nullptr);
/// "near-degenerate" or "non-degenerate" from the shipped data directory.
Scenario builtin_scenario(std::string_view name, MaterialPtr material_override = nullptr);
std::vector<std::string> builtin_scenario_names();

std::string_view to_string(Output q);

}  // namespace cavspdc
