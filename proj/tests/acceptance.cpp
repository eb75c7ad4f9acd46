// Prints one PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cavspdc/biphoton.hpp"
#include "cavspdc/cavity.hpp"
#include "cavspdc/error.hpp"
#include "cavspdc/figures.hpp"
#include "cavspdc/sweep.hpp"

using namespace cavspdc;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scenario scenario(const char* name, const PmType& pm, std::vector<std::string> outputs,
                  std::vector<SweepAxis> axes = {}) {
  Scenario s = builtin_scenario(name);
  s.pm = pm;
  s.axes = std::move(axes);
  s.outputs = std::move(outputs);
  s.columns = expand_outputs(s.outputs);
  return s;
}

double value(const Scenario& s, const ScenarioPoint& p, const std::string& column) {
  for (const auto& [col, cell] : evaluate_point(s, p))
    if (col.name == column) {
      if (cell.status == CellStatus::Error) throw Error(cell.error, column);
      return cell.value;
    }
  throw Error(Errc::InvalidArgument, "no column " + column);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

void fidelity_threshold() {
  const auto start = std::chrono::steady_clock::now();
  bool monotone = true;
  double worst_drop = 0.0, worst_at = 0.0, crossing = -1.0;
  double prev = fidelity_for_ratio(0.5);
  const int n = 2000;
  for (int i = 1; i <= n; ++i) {
    const double r = 0.5 + 4.5 * i / n;
    const double f = fidelity_for_ratio(r);
    if (f < prev) {
      monotone = false;
      if (prev - f > worst_drop) worst_drop = prev - f, worst_at = r;
    }
    if (crossing < 0.0 && prev < 0.9 && f >= 0.9) crossing = r;
    prev = f;
  }
  const bool in_window = crossing >= 1.7 && crossing <= 2.3;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, monotone && in_window && seconds < 10.0,
         fmt("crosses 0.9 at ratio %.3f in %.2f s; %s", crossing, seconds,
             monotone ? "monotone on [0.5, 5]"
                      : fmt("not monotone, largest step decrease %.2e near ratio %.2f", worst_drop, worst_at)
                            .c_str()));
}

void degraded_fidelities() {
  ScenarioPoint p = builtin_scenario("non-degenerate").base;
  p.total_length_m = 0.01;
  p.delay_m = 0.0;
  auto s2 = scenario("non-degenerate", PmType::type_ii(), {"fidelity_single"});
  auto s0 = scenario("non-degenerate", PmType::type0(), {"fidelity_single"});
  const double f2a = value(s2, p, "fidelity_single1"), f2b = value(s2, p, "fidelity_single2");
  const double f0a = value(s0, p, "fidelity_single1"), f0b = value(s0, p, "fidelity_single2");
  auto near = [](double f, double t) { return std::abs(f - t) <= 0.1; };
  report(2, near(f2a, 0.5) && near(f2b, 0.5) && near(f0a, 0.2) && near(f0b, 0.2),
         fmt("type II %.3f / %.3f (0.5 +- 0.1), type 0 %.3f / %.3f (0.2 +- 0.1)", f2a, f2b, f0a, f0b));
}

void delay_compensation() {
  auto s = scenario("non-degenerate", PmType::type_ii(), {"bandwidth", "cluster1", "cluster2", "fidelity_bell"});
  ScenarioPoint p = s.base;
  auto margin = [&](double dl) {
    p.delay_m = dl;
    return std::min(value(s, p, "cluster1") / value(s, p, "bandwidth1"),
                    value(s, p, "cluster2") / value(s, p, "bandwidth2")) -
           2.0;
  };
  // first delay on a 1 um grid where both spacings reach twice the bandwidth, then refined
  double lo = 0.0, hi = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double dl = i * 1e-6;
    if (margin(dl) >= 0.0) {
      hi = dl;
      break;
    }
    lo = dl;
  }
  if (hi < 0.0) {
    report(3, false, "spacings never reach twice the bandwidth for delays up to 1 mm");
    return;
  }
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) >= 0.0 ? hi : lo) = mid;
  }
  p.delay_m = hi;
  const double f = value(s, p, "fidelity_bell");
  const bool delay_ok = std::abs(hi - 550e-6) <= 0.15 * 550e-6;
  const bool fid_ok = std::abs(f - 0.93) <= 0.02;
  p.delay_m = 550e-6;
  const double f550 = value(s, p, "fidelity_bell");
  report(3, delay_ok && fid_ok,
         fmt("crossing at %.1f um (550 +- 15%% %s), Bell fidelity there %.4f (0.93 +- 0.02 %s); at 550 um %.4f",
             hi * 1e6, delay_ok ? "ok" : "missed", f, fid_ok ? "ok" : "missed", f550));
}

void type0_infeasible() {
  auto s = scenario("non-degenerate", PmType::type0(), {"joint"},
                    {{"source.length_ratio", 0.05, 0.95, 181}});
  const auto t = run_sweep(s);
  double lowest = kInfinity;
  bool errors = false;
  for (const auto& c : t.column("joint").cells) {
    if (c.status == CellStatus::Error) errors = true;
    if (c.status == CellStatus::Ok) lowest = std::min(lowest, c.value);
  }
  report(4, !errors && lowest > 1e12, fmt("smallest type 0 joint spacing %.4g THz over ratio [0.05, 0.95]", lowest * 1e-12));
}

void near_degenerate_orderings() {
  auto ax = SweepAxis{"source.total_length_m", 0.005, 0.030, 101};
  const auto t2 = run_sweep(scenario("near-degenerate", PmType::type_ii(), {"bandwidth", "cluster1", "cluster2"}, {ax}));
  const auto t0 = run_sweep(scenario("near-degenerate", PmType::type0(), {"bandwidth_2nd", "cluster1_2nd", "cluster2_2nd"}, {ax}));
  auto v = [](const SweepResult& t, const char* c, std::size_t i) {
    const auto& cell = t.column(c).cells[i];
    return cell.status == CellStatus::Error ? std::nan("") : cell.value;
  };
  bool ii_ok = true, zero_ok = true;
  double ii_worst = kInfinity, zero_worst = kInfinity;
  for (std::size_t i = 0; i < t2.rows(); ++i) {
    for (auto [b, c] : {std::pair{"bandwidth1", "cluster1"}, std::pair{"bandwidth2", "cluster2"}}) {
      const double r = v(t2, c, i) / v(t2, b, i);
      ii_worst = std::min(ii_worst, r);
      if (!(r > 1.0)) ii_ok = false;
    }
    for (auto [b, c] : {std::pair{"bandwidth1_2nd", "cluster1_2nd"}, std::pair{"bandwidth2_2nd", "cluster2_2nd"}}) {
      const double r = v(t0, b, i) / v(t0, c, i);
      zero_worst = std::min(zero_worst, r);
      if (!(r > 1.0)) zero_ok = false;
    }
  }
  report(5, ii_ok && zero_ok,
         fmt("over 5-30 mm: min type II cluster/bandwidth %.3f, min type 0 bandwidth/cluster %.3f", ii_worst, zero_worst));
}

void near_degenerate_joint() {
  auto s = scenario("near-degenerate", PmType::type_ii(), {"joint"}, {{"source.length_ratio", 0.05, 0.45, 81}});
  const auto t = run_sweep(s);
  double lowest = kInfinity;
  bool errors = false;
  for (const auto& c : t.column("joint").cells) {
    if (c.status == CellStatus::Error) errors = true;
    if (c.status == CellStatus::Ok) lowest = std::min(lowest, c.value);
  }
  report(6, !errors && lowest > 100e12, fmt("smallest near-degenerate type II joint spacing %.3g Hz", lowest));
}

void cavity_linewidth() {
  const auto spec = CavitySpec::from_ledger(0.9998, 0.9998, millimetres(53.0),
                                            {{"AR face", 0.002, 4}});
  const double lw = linewidth(spec).si();
  report(7, std::abs(lw - 4e6) <= 0.4e6,
         fmt("eta %.5f, finesse %.1f, linewidth %.3f MHz (4 +- 0.4)", spec.eta, finesse(spec), lw * 1e-6));
}

void temperature_sensitivity_check() {
  auto s = scenario("non-degenerate", PmType::type_ii(), {"sensitivity"});
  const double a = std::abs(value(s, s.base, "sensitivity1"));
  const double b = std::abs(value(s, s.base, "sensitivity2"));
  const bool ok = a >= 1e12 && a <= 4e12 && b >= 1e12 && b <= 4e12;
  report(8, ok, fmt("|dOmega/dT| %.3f / %.3f THz/K (2 THz/K within a factor 2)", a * 1e-12, b * 1e-12));
}

void second_order_consistency() {
  auto s = scenario("non-degenerate", PmType::type_ii(), {"cluster1", "cluster2", "cluster1_2nd", "cluster2_2nd"});
  const double d1 = rel(value(s, s.base, "cluster1"), value(s, s.base, "cluster1_2nd"));
  const double d2 = rel(value(s, s.base, "cluster2"), value(s, s.base, "cluster2_2nd"));
  auto near = scenario("near-degenerate", PmType::type0(), {"cluster1", "cluster1_2nd"},
                       {{"source.length_ratio", 0.05, 0.95, 181}});
  const auto t = run_sweep(near);
  double largest = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const auto& a = t.column("cluster1").cells[i];
    const auto& b = t.column("cluster1_2nd").cells[i];
    if (a.status == CellStatus::Ok && b.status == CellStatus::Ok) largest = std::max(largest, rel(a.value, b.value));
    else if (a.status != b.status) largest = std::max(largest, 1.0);
  }
  report(9, d1 < 0.05 && d2 < 0.05 && largest > 0.2,
         fmt("type II non-degenerate differences %.2e / %.2e; near-degenerate type 0 largest %.3f", d1, d2, largest));
}

void property_suite() {
  std::vector<std::string> broken;
  const auto model = MaterialRegistry::builtin().find("mgo-ppln");

  // energy conservation
  CrystalSpec c;
  c.material = model;
  for (int i = 0; i < 200; ++i) {
    const auto pump = angular_from_wavelength(nanometres(520.0 + i));
    const auto sig = angular_from_wavelength(nanometres(900.0 + 3.7 * i));
    const auto p = SpdcProcess::from_pump_signal(pump, sig, c, PmType::type_ii());
    const auto q = SpdcProcess::from_signal_idler(sig, p.idler(), c, PmType::type_ii());
    if (p.signal().si() + p.idler().si() != p.pump().si() || q.signal().si() + q.idler().si() != q.pump().si()) {
      broken.push_back("energy conservation");
      break;
    }
  }

  // comb normalization
  for (double x : {0.01, 0.3, 1.391557, 2.0, 4.5}) {
    const auto comb = build_comb_from_steps(x, 0.7 * x, BellTarget::PsiMinus, PmKind::TypeII);
    if (std::abs(comb.total_power() - 1.0) > 1e-12) {
      broken.push_back("comb normalization");
      break;
    }
  }

  // analytic derivatives vs central differences
  double worst = 0.0;
  auto s = builtin_scenario("non-degenerate");
  const auto cfg = s.source_at(s.base);
  for (auto axis : {Axis::Ordinary, Axis::Extraordinary})
    for (double lam : {0.78e-6, 1.064e-6, 1.55e-6}) {
      const auto w = angular_from_wavelength(metres(lam));
      const auto t = kelvin(310.0);
      const auto ip = model->evaluate(axis, w, t);
      const double h = w.si() * 1e-5, ht = 0.01;
      const auto up = model->evaluate(axis, rad_per_s(w.si() + h), t);
      const auto dn = model->evaluate(axis, rad_per_s(w.si() - h), t);
      worst = std::max(worst, rel(ip.dn_domega, (up.n - dn.n) / (2 * h)));
      worst = std::max(worst, rel(ip.d2n_domega2, (up.dn_domega - dn.dn_domega) / (2 * h)));
      const double fd_t = (model->evaluate(axis, w, kelvin(310.0 + ht)).n - model->evaluate(axis, w, kelvin(310.0 - ht)).n) / (2 * ht);
      worst = std::max(worst, rel(ip.dn_dT, fd_t));
    }
  for (auto mode : {ModeId::M1, ModeId::M2, ModeId::M3, ModeId::M4}) {
    const auto w = centre_frequency(cfg, mode);
    const auto d = mode_derivatives(cfg, mode, w);
    const double h = w.si() * 1e-5;
    const auto up = mode_derivatives(cfg, mode, rad_per_s(w.si() + h));
    const auto dn = mode_derivatives(cfg, mode, rad_per_s(w.si() - h));
    worst = std::max(worst, rel(d.dm_domega, (up.m - dn.m) / (2 * h)));
    worst = std::max(worst, rel(d.d2m_domega2, (up.dm_domega - dn.dm_domega) / (2 * h)));
    auto hot = cfg, cold = cfg;
    hot.set_temperature(kelvin(298.15 + 0.01));
    cold.set_temperature(kelvin(298.15 - 0.01));
    worst = std::max(worst, rel(d.dm_dT, (mode_number(hot, mode, w) - mode_number(cold, mode, w)) / 0.02));
  }
  if (worst > 1e-5) broken.push_back(fmt("derivatives (worst %.2e)", worst));

  // swapping the crystal lengths swaps the pair spacings
  ScenarioPoint a = s.base, b = s.base;
  a.length_ratio = 0.3;
  b.length_ratio = 0.7;
  const auto ca = s.source_at(a), cb = s.source_at(b);
  if (rel(cluster_spacing_first_order(ca, 1).si(), cluster_spacing_first_order(cb, 2).si()) > 1e-9 ||
      rel(cluster_spacing_first_order(ca, 2).si(), cluster_spacing_first_order(cb, 1).si()) > 1e-9)
    broken.push_back("pair symmetry");
  if (rel(joint_cluster_spacing(ca).si(), joint_cluster_spacing(cb).si()) > 1e-9) broken.push_back("joint symmetry");
  // equal FSRs diverge: exact degeneracy in one polarization
  {
    auto d = s;
    d.pm = PmType::type0();
    d.signal = rad_per_s(d.pump.si() / 2);
    const auto cd = d.source_at(d.base);
    if (!is_infinite(cluster_spacing_first_order(cd, 1)) || !is_infinite(cluster_spacing_first_order(cd, 2)))
      broken.push_back("divergence at degeneracy");
  }
  if (!is_infinite(joint_cluster_spacing(infinite_frequency(), infinite_frequency())) ||
      joint_cluster_spacing(hertz(3e12), infinite_frequency()).si() != 3e12)
    broken.push_back("joint divergence");

  // determinism and worker independence
  auto sw = scenario("non-degenerate", PmType::type_ii(),
                     {"bandwidth", "cluster1", "cluster2", "joint", "fidelity_bell"},
                     {{"source.length_ratio", 0.05, 0.95, 24}, {"source.delay_m", 0.0, 1e-3, 5}});
  const auto one = to_csv(run_sweep(sw, {1}));
  const auto again = to_csv(run_sweep(sw, {1}));
  const auto many = to_csv(run_sweep(sw, {8}));
  if (one != again) broken.push_back("determinism");
  if (one != many) broken.push_back("worker independence");

  std::string detail = "energy, normalization, derivatives (worst " + fmt("%.1e", worst) +
                       "), symmetry, divergence, determinism, workers";
  if (!broken.empty()) {
    detail = "broken:";
    for (const auto& b : broken) detail += " " + b + ";";
  }
  report(10, broken.empty(), detail);
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{fidelity_threshold,    degraded_fidelities,   delay_compensation,
                                         type0_infeasible,      near_degenerate_orderings,
                                         near_degenerate_joint, cavity_linewidth,      temperature_sensitivity_check,
                                         second_order_consistency, property_suite};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
