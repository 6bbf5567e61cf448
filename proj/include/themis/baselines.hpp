#ifndef THEMIS_BASELINES_HPP
#define THEMIS_BASELINES_HPP

#include "themis/engine.hpp"

namespace themis {

/// Fixed-interval baselines. All of them re-decide every slot at every
/// boundary: any task still in flight is discarded and its request
/// re-queued, then slots are filled from the pending set. They therefore
/// require interval_length >= the largest tenant computation time so a
/// scheduled task can finish within its interval.
class FixedIntervalPolicy : public Policy {
 public:
  void check_scenario(const Scenario& sc) const override;

 protected:
  /// Evicts every in-flight occupant (revoke + re-enqueue) and records the
  /// preemptions. Returns slot indices of the now-free slots.
  std::vector<SlotIdx> vacate_all(Simulation& sim, PolicyDecision& d) const;
};

/// Area-deprivation scheduler: ranks pending tenants by area * hmta
/// (fewest area-interval products first) and fills slots largest-first
/// with the most deprived tenant that fits. Reconfigures every slot it
/// fills, whether or not the tenant changed.
class StfsPolicy : public FixedIntervalPolicy {
 public:
  explicit StfsPolicy(const Scenario&) {}
  std::string name() const override { return "stfs"; }
  PolicyDecision schedule_interval(Simulation& sim) override;
};

/// Plain round robin: a circular cursor over the fixed tenant order; each
/// slot takes the next tenant in turn, and if that tenant does not fit (or
/// has no request) the slot stays empty for the interval.
class PrrPolicy : public FixedIntervalPolicy {
 public:
  explicit PrrPolicy(const Scenario& sc);
  std::string name() const override { return "prr"; }
  PolicyDecision schedule_interval(Simulation& sim) override;
  void save_state(std::string& out) const override;
  void load_state(const std::string& in) override;

 protected:
  std::vector<TenantIdx> order_;
  std::size_t cursor_ = 0;
};

/// Relaxed round robin: like PRR, but non-fitting tenants are skipped and
/// the search continues until a fitting tenant or a full rotation.
class RrrPolicy : public PrrPolicy {
 public:
  explicit RrrPolicy(const Scenario& sc) : PrrPolicy(sc) {}
  std::string name() const override { return "rrr"; }
  PolicyDecision schedule_interval(Simulation& sim) override;
};

/// Deficit round robin: every pending tenant gains one quantum of
/// area-time units per interval and becomes eligible once its deficit
/// covers its adjustment value; slots are filled largest-first by eligible
/// tenants in cursor order.
class DrrPolicy : public FixedIntervalPolicy {
 public:
  explicit DrrPolicy(const Scenario& sc);
  std::string name() const override { return "drr"; }
  PolicyDecision schedule_interval(Simulation& sim) override;
  void save_state(std::string& out) const override;
  void load_state(const std::string& in) override;

  std::uint64_t quantum() const { return quantum_; }

 private:
  std::vector<TenantIdx> order_;
  std::vector<std::uint64_t> deficit_;
  std::uint64_t quantum_ = 1;
  std::size_t cursor_ = 0;
};

}  // namespace themis

#endif
