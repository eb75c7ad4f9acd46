#include "cavspdc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

namespace cavspdc {

Cell Cell::ok(double v) {
  if (std::isinf(v)) return {CellStatus::Infinite, v, Errc::InvalidArgument};
  return {CellStatus::Ok, v, Errc::InvalidArgument};
}

std::size_t SweepResult::rows() const {
  if (!axes.empty()) return axes.front().cells.size();
  if (!columns.empty()) return columns.front().cells.size();
  return 0;
}

const Column& SweepResult::column(std::string_view name) const {
  for (const auto& c : axes)
    if (c.name == name) return c;
  for (const auto& c : columns)
    if (c.name == name) return c;
  throw Error(Errc::InvalidArgument, "no column '" + std::string(name) + "'");
}

void SweepResult::append_columns(const SweepResult& other, const std::string& prefix) {
  if (other.rows() != rows()) throw Error(Errc::InvalidArgument, "row counts differ");
  for (auto c : other.columns) {
    c.name = prefix + c.name;
    columns.push_back(std::move(c));
  }
}

namespace {

// Lazily evaluated quantities at one grid point.
class CellEvaluator {
 public:
  CellEvaluator(const Scenario& s, const ScenarioPoint& p) : s_(s), p_(p) {}

  double eval(Output q) {
    switch (q) {
      case Output::Bandwidth1: return spdc_bandwidth(source().process(1, s_.passes)).si();
      case Output::Bandwidth2: return spdc_bandwidth(source().process(2, s_.passes)).si();
      case Output::Bandwidth1Second:
        return spdc_bandwidth_second_order(source().process(1, s_.passes)).si();
      case Output::Bandwidth2Second:
        return spdc_bandwidth_second_order(source().process(2, s_.passes)).si();
      case Output::Cluster1: return cluster(1).si();
      case Output::Cluster2: return cluster(2).si();
      case Output::Joint: return joint_cluster_spacing(cluster(1), cluster(2)).si();
      case Output::Cluster1Second: return cluster_spacing_second_order(source(), 1).si();
      case Output::Cluster2Second: return cluster_spacing_second_order(source(), 2).si();
      case Output::JointSecond:
        return joint_cluster_spacing(cluster_spacing_second_order(source(), 1),
                                     cluster_spacing_second_order(source(), 2))
            .si();
      case Output::FidelitySingle1: return single_crystal_fidelity(comb(), 1);
      case Output::FidelitySingle2: return single_crystal_fidelity(comb(), 2);
      case Output::FidelityBell: return bell_fidelity(comb(), s_.target);
      case Output::Finesse: return finesse(s_.cavity_at(p_));
      case Output::Linewidth: return linewidth(s_.cavity_at(p_)).si();
      case Output::Sensitivity1: return temperature_sensitivity(source(), 1);
      case Output::Sensitivity2: return temperature_sensitivity(source(), 2);
      case Output::PolingPeriod: return source().crystal1.period_at_temperature().si();
    }
    return 0.0;
  }

 private:
  const SourceConfig& source() {
    if (!source_) source_ = s_.source_at(p_);
    return *source_;
  }
  Frequency cluster(int pair) {
    auto& c = clusters_[pair - 1];
    if (!c) c = cluster_spacing_first_order(source(), pair);
    return *c;
  }
  const AmplitudeComb& comb() {
    if (!comb_) comb_ = build_comb(source(), s_.target, s_.truncation);
    return *comb_;
  }

  const Scenario& s_;
  ScenarioPoint p_;
  std::optional<SourceConfig> source_;
  std::optional<Frequency> clusters_[2];
  std::optional<AmplitudeComb> comb_;
};

ScenarioPoint point_for_row(const Scenario& s, std::size_t row) {
  ScenarioPoint p = s.base;
  std::size_t rest = row;
  for (std::size_t k = s.axes.size(); k-- > 0;) {
    const auto& a = s.axes[k];
    set_parameter(p, a.parameter, a.value(rest % a.points));
    rest /= a.points;
  }
  return p;
}

std::vector<Cell> evaluate_row(const Scenario& s, const ScenarioPoint& p) {
  CellEvaluator ev(s, p);
  std::vector<Cell> out;
  out.reserve(s.columns.size());
  for (const auto& col : s.columns) {
    try {
      out.push_back(Cell::ok(ev.eval(col.quantity)));
    } catch (const Error& e) {
      out.push_back(Cell::failed(e.code()));
    }
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> provenance_for(const Scenario& scenario) {
  return {{"tool", "cavspdc " + std::string(kVersion)},
          {"scenario", scenario.name},
          {"scenario_hash", hex64(scenario.hash())},
          {"material", scenario.material ? scenario.material->name() : ""},
          {"material_hash", hex64(scenario.material ? scenario.material->content_hash() : 0)}};
}

std::vector<std::pair<OutputColumn, Cell>> evaluate_point(const Scenario& scenario,
                                                          const ScenarioPoint& point) {
  auto cells = evaluate_row(scenario, point);
  std::vector<std::pair<OutputColumn, Cell>> out;
  for (std::size_t i = 0; i < cells.size(); ++i) out.emplace_back(scenario.columns[i], cells[i]);
  return out;
}

SweepResult run_sweep(const Scenario& scenario, const SweepOptions& options) {
  if (scenario.columns.empty())
    throw Error(Errc::ScenarioValidation, "outputs: at least one output quantity is required");
  std::size_t rows = 1;
  for (const auto& a : scenario.axes) rows *= a.points;

  SweepResult r;
  r.provenance = provenance_for(scenario);
  for (const auto& a : scenario.axes) {
    Column c{a.parameter.substr(a.parameter.find('.') + 1), std::string(parameter_unit(a.parameter)), {}};
    c.cells.reserve(rows);
    r.axes.push_back(std::move(c));
  }
  for (const auto& col : scenario.columns) r.columns.push_back({col.name, col.unit, std::vector<Cell>(rows)});

  for (std::size_t row = 0; row < rows; ++row) {
    const auto p = point_for_row(scenario, row);
    for (std::size_t k = 0; k < scenario.axes.size(); ++k)
      r.axes[k].cells.push_back(Cell::ok(get_parameter(p, scenario.axes[k].parameter)));
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t row = next.fetch_add(1);
      if (row >= rows) return;
      try {
        auto cells = evaluate_row(scenario, point_for_row(scenario, row));
        for (std::size_t k = 0; k < cells.size(); ++k) r.columns[k].cells[row] = cells[k];
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(rows);
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(rows)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return r;
}

}  // namespace cavspdc
