#ifndef THEMIS_ENGINE_HPP
#define THEMIS_ENGINE_HPP

#include <memory>
#include <string>
#include <vector>

#include "themis/core.hpp"
#include "themis/metrics.hpp"
#include "themis/rational.hpp"
#include "themis/workload.hpp"

namespace themis {

enum class EventKind { kAssign, kPreempt, kComplete, kPr, kIdle };

const char* event_kind_name(EventKind k);

struct TraceEvent {
  TimeUnit time = 0;
  SlotIdx slot = 0;  // 1-based display id
  EventKind kind = EventKind::kIdle;
  TenantIdx tenant = kNoTenant;

  bool operator==(const TraceEvent&) const = default;
};

/// Per-boundary metric snapshot; counters are cumulative since time 0.
struct Snapshot {
  std::uint64_t interval_index = 0;
  TimeUnit time = 0;  // elapsed units when the snapshot was taken
  std::vector<Rational> avg_alloc;
  Rational sod;
  Rational utilization;
  std::uint64_t pr_count = 0;
  Rational energy_mj;
};

struct SimulationTrace {
  std::vector<TraceEvent> events;
  std::vector<Snapshot> snapshots;
  std::uint64_t demand_digest = 0;

  const Snapshot& final_snapshot() const {
    if (snapshots.empty()) throw ContractError("trace has no snapshots");
    return snapshots.back();
  }
};

/// What a policy wants done at one interval boundary. Slots are addressed
/// by index. The policy has already applied ledger and queue effects; the
/// engine applies occupancy, events, and reconfiguration accounting.
struct PolicyDecision {
  struct Assignment {
    SlotIdx slot;
    TenantIdx tenant;
  };
  std::vector<SlotIdx> preemptions;      // evicted incumbents (slot indices)
  std::vector<Assignment> assignments;   // new occupants this boundary
  std::vector<SlotIdx> pr_events;        // slots to reconfigure
};

class Simulation;

/// Scheduling policy interface. One instance drives one run; policies may
/// keep internal state (cursors, deficits) which must round-trip through
/// save_state/load_state for resumable simulations.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;

  /// Scenario compatibility check, called once before the run.
  virtual void check_scenario(const Scenario& sc) const { (void)sc; }

  /// Called at each boundary after completions retire and new demand is
  /// enqueued. May mutate the ledger and queue through `sim`.
  virtual PolicyDecision schedule_interval(Simulation& sim) = 0;

  virtual void save_state(std::string& json_out) const { json_out = "{}"; }
  virtual void load_state(const std::string& json_in) { (void)json_in; }

  /// Comparison-rule evaluations performed so far (complexity accounting).
  std::uint64_t comparisons() const { return comparisons_; }

 protected:
  void count_comparison(std::uint64_t n = 1) const { comparisons_ += n; }
  mutable std::uint64_t comparisons_ = 0;
};

std::unique_ptr<Policy> make_policy(const std::string& name,
                                    const Scenario& sc);
std::vector<std::string> policy_names();

/// One deterministic run: a scenario, a policy, and the evolving state.
class Simulation {
 public:
  Simulation(Scenario scenario, std::unique_ptr<Policy> policy);

  /// Runs one boundary evaluation plus up to interval_length units of task
  /// progress (clipped at the horizon). Returns false once the horizon is
  /// reached.
  bool step_interval();
  void run_to_horizon();

  bool done() const { return clock_.now >= scenario_.horizon; }

  const Scenario& scenario() const { return scenario_; }
  const SimClock& clock() const { return clock_; }
  const std::vector<SlotState>& slots() const { return slots_; }
  AllocationLedger& ledger() { return ledger_; }
  const AllocationLedger& ledger() const { return ledger_; }
  TaskQueue& queue() { return queue_; }
  const TaskQueue& queue() const { return queue_; }
  const SimulationTrace& trace() const { return trace_; }
  const Policy& policy() const { return *policy_; }
  const Rational& desired_allocation() const { return desired_; }
  std::uint64_t pr_count() const { return pr_count_; }
  const Rational& energy_mj() const { return energy_mj_; }

  /// Per-slot reconfiguration energy after optional bitstream-size scaling.
  const std::vector<Rational>& pr_energy_per_slot() const { return pr_energy_; }

  /// Full dynamic state as JSON; reloading yields bit-identical
  /// continuation traces.
  std::string state_to_json() const;
  void load_state_json(const std::string& text);

 private:
  void boundary();
  void run_units(TimeUnit n);
  void apply_decision(const PolicyDecision& d);
  void take_snapshot();
  void emit(TimeUnit t, SlotIdx slot, EventKind k, TenantIdx tenant);

  Scenario scenario_;
  std::unique_ptr<Policy> policy_;
  SimClock clock_;
  std::vector<SlotState> slots_;
  AllocationLedger ledger_;
  TaskQueue queue_;
  SimulationTrace trace_;
  Rational desired_;
  std::vector<Rational> pr_energy_;
  std::uint64_t rng_state_ = 0;
  std::uint64_t busy_units_ = 0;
  std::uint64_t pr_count_ = 0;
  Rational energy_mj_;
  std::uint64_t boundaries_run_ = 0;
};

/// Convenience wrapper: build, run, and hand back the trace.
SimulationTrace run_simulation(const Scenario& scenario,
                               const std::string& policy_name);

/// Busy fraction replayed from the event log: sum of occupied slot-units
/// over slot_count * horizon.
Rational slot_utilization(const SimulationTrace& trace, const Scenario& sc);

/// CSV exports. LF line endings, '.' decimal separator, values at fixed
/// 4-decimal precision.
std::string trace_to_csv(const SimulationTrace& trace, const Scenario& sc);
std::string snapshots_to_csv(const SimulationTrace& trace, const Scenario& sc);

}  // namespace themis

#endif
