#ifndef THEMIS_ENERGY_HPP
#define THEMIS_ENERGY_HPP

#include <vector>

#include "themis/engine.hpp"

namespace themis {

/// Per-slot reconfiguration energy. With kb_scaling each slot's cost is
/// base_mj * bitstream_kb / mean_kb; otherwise the per-slot values are
/// taken as given.
struct EnergyModel {
  std::vector<Rational> per_slot_mj;

  static EnergyModel from_scenario(const Scenario& sc);
};

/// Total reconfiguration energy: one per-slot cost per PR event in the
/// trace. Independent of the engine's running total, so the two can be
/// cross-checked.
Rational total_energy(const SimulationTrace& trace, const EnergyModel& model);

struct SweepRow {
  TimeUnit interval = 0;
  Rational sod;
  Rational energy_mj;
  std::uint64_t pr_count = 0;
  Rational utilization;
};

/// One full simulation per interval length, horizon held fixed. Rows come
/// back ordered by interval. `parallel` fans the runs out across OpenMP
/// threads; the serial path is kept as the reference and both produce
/// identical rows.
std::vector<SweepRow> tradeoff_sweep(const Scenario& scenario,
                                     const std::string& policy_name,
                                     const std::vector<TimeUnit>& intervals,
                                     bool parallel = true);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace themis

#endif
