#include "themis/baselines.hpp"

#include <algorithm>

#include "json.hpp"

namespace themis {

namespace {

std::vector<TenantIdx> rotation_order(const Scenario& sc) {
  if (sc.demand.kind == DemandKind::kAlways && !sc.demand.order.empty())
    return sc.demand.order;
  std::vector<TenantIdx> out(sc.tenants.size());
  for (TenantIdx i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

/// Slot indices sorted by descending capacity (id ascending on ties).
std::vector<SlotIdx> slots_by_capacity_desc(const std::vector<SlotState>& slots) {
  std::vector<SlotIdx> out(slots.size());
  for (SlotIdx i = 0; i < out.size(); ++i) out[i] = i;
  std::sort(out.begin(), out.end(), [&](SlotIdx a, SlotIdx b) {
    if (slots[a].capacity != slots[b].capacity)
      return slots[a].capacity > slots[b].capacity;
    return a < b;
  });
  return out;
}

}  // namespace

void FixedIntervalPolicy::check_scenario(const Scenario& sc) const {
  const std::uint32_t min_interval = sc.max_comp_time();
  if (sc.interval_length < min_interval)
    throw ConfigError(
        "policy '" + name() + "' cannot schedule with interval_length " +
        std::to_string(sc.interval_length) + ": the minimum is " +
        std::to_string(min_interval) +
        " (the largest tenant computation time); the bundled benchmark "
        "scenarios use 36");
}

std::vector<SlotIdx> FixedIntervalPolicy::vacate_all(Simulation& sim,
                                                     PolicyDecision& d) const {
  std::vector<SlotIdx> freed;
  const std::uint64_t interval = sim.clock().interval_index();
  for (SlotIdx s = 0; s < sim.slots().size(); ++s) {
    const TenantIdx occ = sim.slots()[s].occupant;
    if (occ != kNoTenant) {
      sim.ledger().revoke(sim.scenario().tenants[occ]);
      sim.queue().enqueue({occ, interval});
      d.preemptions.push_back(s);
    }
    freed.push_back(s);
  }
  return freed;
}

PolicyDecision StfsPolicy::schedule_interval(Simulation& sim) {
  const auto& tenants = sim.scenario().tenants;
  auto& queue = sim.queue();
  auto& ledger = sim.ledger();
  PolicyDecision d;
  vacate_all(sim, d);

  for (SlotIdx s : slots_by_capacity_desc(sim.slots())) {
    const std::uint32_t cap = sim.slots()[s].capacity;
    TenantIdx best = kNoTenant;
    for (TenantIdx t = 0; t < tenants.size(); ++t) {
      if (queue.pending_count(t) == 0 || tenants[t].area > cap) continue;
      count_comparison();
      if (best == kNoTenant) {
        best = t;
        continue;
      }
      const std::uint64_t mine = tenants[t].area * ledger.hmta(t);
      const std::uint64_t their = tenants[best].area * ledger.hmta(best);
      if (mine < their ||
          (mine == their && queue.front_rank(t) > queue.front_rank(best)))
        best = t;
    }
    if (best == kNoTenant) continue;
    queue.consume_newest(best);
    ledger.grant(tenants[best]);
    d.assignments.push_back({s, best});
    d.pr_events.push_back(s);  // reconfigures on every fill, even same-tenant
  }
  return d;
}

PrrPolicy::PrrPolicy(const Scenario& sc) : order_(rotation_order(sc)) {}

PolicyDecision PrrPolicy::schedule_interval(Simulation& sim) {
  const auto& tenants = sim.scenario().tenants;
  auto& queue = sim.queue();
  PolicyDecision d;
  vacate_all(sim, d);

  for (SlotIdx s = 0; s < sim.slots().size(); ++s) {
    const TenantIdx t = order_[cursor_];
    count_comparison();
    if (queue.pending_count(t) == 0 || tenants[t].area > sim.slots()[s].capacity)
      continue;  // plain semantics: the head keeps its turn, the slot idles
    cursor_ = (cursor_ + 1) % order_.size();
    queue.consume_newest(t);
    sim.ledger().grant(tenants[t]);
    d.assignments.push_back({s, t});
    if (t != sim.slots()[s].configured) d.pr_events.push_back(s);
  }
  return d;
}

void PrrPolicy::save_state(std::string& out) const {
  out = nlohmann::json{{"cursor", cursor_}}.dump();
}

void PrrPolicy::load_state(const std::string& in) {
  cursor_ = nlohmann::json::parse(in)["cursor"].get<std::size_t>();
}

PolicyDecision RrrPolicy::schedule_interval(Simulation& sim) {
  const auto& tenants = sim.scenario().tenants;
  auto& queue = sim.queue();
  PolicyDecision d;
  vacate_all(sim, d);

  for (SlotIdx s = 0; s < sim.slots().size(); ++s) {
    const std::uint32_t cap = sim.slots()[s].capacity;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      const TenantIdx t = order_[(cursor_ + k) % order_.size()];
      count_comparison();
      if (queue.pending_count(t) == 0 || tenants[t].area > cap) continue;
      queue.consume_newest(t);
      sim.ledger().grant(tenants[t]);
      d.assignments.push_back({s, t});
      if (t != sim.slots()[s].configured) d.pr_events.push_back(s);
      cursor_ = (cursor_ + k + 1) % order_.size();
      break;  // full rotation without a fit leaves the cursor unchanged
    }
  }
  return d;
}

DrrPolicy::DrrPolicy(const Scenario& sc)
    : order_(rotation_order(sc)), deficit_(sc.tenants.size(), 0) {
  std::uint64_t sum = 0;
  for (const auto& t : sc.tenants) sum += t.adjustment_value;
  quantum_ = (sum + sc.tenants.size() - 1) / sc.tenants.size();  // ceil(mean)
}

PolicyDecision DrrPolicy::schedule_interval(Simulation& sim) {
  const auto& tenants = sim.scenario().tenants;
  auto& queue = sim.queue();
  PolicyDecision d;
  vacate_all(sim, d);

  for (TenantIdx t = 0; t < tenants.size(); ++t)
    if (queue.pending_count(t) > 0) deficit_[t] += quantum_;

  for (SlotIdx s : slots_by_capacity_desc(sim.slots())) {
    const std::uint32_t cap = sim.slots()[s].capacity;
    for (std::size_t k = 0; k < order_.size(); ++k) {
      const std::size_t pos = (cursor_ + k) % order_.size();
      const TenantIdx t = order_[pos];
      count_comparison();
      if (queue.pending_count(t) == 0 || tenants[t].area > cap) continue;
      if (deficit_[t] < tenants[t].adjustment_value) continue;
      deficit_[t] -= tenants[t].adjustment_value;
      queue.consume_newest(t);
      sim.ledger().grant(tenants[t]);
      d.assignments.push_back({s, t});
      if (t != sim.slots()[s].configured) d.pr_events.push_back(s);
      cursor_ = (pos + 1) % order_.size();
      break;
    }
  }
  return d;
}

void DrrPolicy::save_state(std::string& out) const {
  out = nlohmann::json{{"cursor", cursor_}, {"deficit", deficit_}}.dump();
}

void DrrPolicy::load_state(const std::string& in) {
  auto j = nlohmann::json::parse(in);
  cursor_ = j["cursor"].get<std::size_t>();
  deficit_ = j["deficit"].get<std::vector<std::uint64_t>>();
}

}  // namespace themis
