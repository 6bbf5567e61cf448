#include "themis/energy.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace themis {

EnergyModel EnergyModel::from_scenario(const Scenario& sc) {
  EnergyModel m;
  if (sc.kb_scaling) {
    std::uint64_t kb_sum = 0;
    for (const auto& s : sc.slots) kb_sum += s.bitstream_kb;
    for (const auto& s : sc.slots)
      m.per_slot_mj.push_back(s.energy_mj *
                              Rational(static_cast<std::int64_t>(s.bitstream_kb) *
                                           static_cast<std::int64_t>(sc.slots.size()),
                                       static_cast<std::int64_t>(kb_sum)));
  } else {
    for (const auto& s : sc.slots) m.per_slot_mj.push_back(s.energy_mj);
  }
  return m;
}

Rational total_energy(const SimulationTrace& trace, const EnergyModel& model) {
  Rational total;
  for (const auto& e : trace.events) {
    if (e.kind != EventKind::kPr) continue;
    if (e.slot < 1 || e.slot > model.per_slot_mj.size())
      throw ContractError("total_energy: PR event on unknown slot " +
                          std::to_string(e.slot));
    total += model.per_slot_mj[e.slot - 1];
  }
  return total;
}

namespace {

SweepRow run_one(const Scenario& base, const std::string& policy_name,
                 TimeUnit interval) {
  Scenario sc = base;
  sc.interval_length = interval;
  SimulationTrace trace = run_simulation(sc, policy_name);
  const Snapshot& last = trace.final_snapshot();
  return {interval, last.sod, last.energy_mj, last.pr_count, last.utilization};
}

}  // namespace

std::vector<SweepRow> tradeoff_sweep(const Scenario& scenario,
                                     const std::string& policy_name,
                                     const std::vector<TimeUnit>& intervals,
                                     bool parallel) {
  if (intervals.empty())
    throw ConfigError("sweep: the interval list is empty");
  make_policy(policy_name, scenario);  // validate the name up front
  std::vector<SweepRow> rows(intervals.size());
  std::exception_ptr error;
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      try {
        rows[i] = run_one(scenario, policy_name, intervals[i]);
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < intervals.size(); ++i)
      rows[i] = run_one(scenario, policy_name, intervals[i]);
  }
  if (error) std::rethrow_exception(error);
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.interval < b.interval; });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "interval,sod,energy_mj,pr_count,utilization\n";
  for (const auto& r : rows)
    out << r.interval << ',' << r.sod.dec4() << ',' << r.energy_mj.dec4() << ','
        << r.pr_count << ',' << r.utilization.dec4() << '\n';
  return out.str();
}

}  // namespace themis
