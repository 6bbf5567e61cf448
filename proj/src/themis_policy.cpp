#include "themis/themis_policy.hpp"

#include <algorithm>

namespace themis {

std::uint64_t defended_credit(std::uint64_t incumbent_credit,
                              std::uint64_t incumbent_av,
                              std::uint64_t grants_since_eval) {
  std::uint64_t discount = incumbent_av * std::max<std::uint64_t>(1, grants_since_eval);
  if (discount > incumbent_credit)
    throw ContractError("competition: discount exceeds incumbent credit");
  return incumbent_credit - discount;
}

bool swapping_wins(std::uint64_t challenger_credit,
                   std::uint64_t incumbent_credit, std::uint64_t incumbent_av,
                   std::uint64_t grants_since_eval) {
  return challenger_credit <
         defended_credit(incumbent_credit, incumbent_av, grants_since_eval);
}

PolicyDecision ThemisPolicy::schedule_interval(Simulation& sim) {
  const auto& tenants = sim.scenario().tenants;
  const auto& slots = sim.slots();
  auto& queue = sim.queue();
  auto& ledger = sim.ledger();
  const std::uint64_t interval = sim.clock().interval_index();
  PolicyDecision d;

  // Planned state for this boundary. planned[s] is the incoming tenant for
  // slot s; kNoTenant where nothing changes. Each slot is visited once in
  // the competition, which also keeps an evicted tenant from re-contesting
  // the slot it just lost within the same interval.
  std::vector<TenantIdx> planned(slots.size(), kNoTenant);

  // --- fill stage -------------------------------------------------------
  // Free slots ascending by (capacity, id); winners reserve the smallest
  // slot they fit so later picks keep the most room.
  std::vector<SlotIdx> free_slots;
  for (SlotIdx s = 0; s < slots.size(); ++s)
    if (slots[s].occupant == kNoTenant) free_slots.push_back(s);
  std::sort(free_slots.begin(), free_slots.end(), [&](SlotIdx a, SlotIdx b) {
    return std::make_pair(slots[a].capacity, a) <
           std::make_pair(slots[b].capacity, b);
  });

  std::vector<TenantIdx> winners;  // selection order
  std::vector<SlotIdx> reserved;
  while (!free_slots.empty()) {
    const std::uint32_t max_cap = slots[free_slots.back()].capacity;
    TenantIdx best = kNoTenant;
    for (TenantIdx t = 0; t < tenants.size(); ++t) {
      if (queue.pending_count(t) == 0) continue;
      if (tenants[t].area > max_cap) continue;
      count_comparison();
      if (best == kNoTenant || ledger.credit(t) < ledger.credit(best) ||
          (ledger.credit(t) == ledger.credit(best) &&
           queue.front_rank(t) > queue.front_rank(best)))
        best = t;
    }
    if (best == kNoTenant) break;
    auto it = std::find_if(free_slots.begin(), free_slots.end(), [&](SlotIdx s) {
      return slots[s].capacity >= tenants[best].area;
    });
    reserved.push_back(*it);
    free_slots.erase(it);
    queue.consume_newest(best);
    ledger.grant(tenants[best]);
    winners.push_back(best);
  }

  // Smaller tenant to smaller slot: rank-match winners (by area, selection
  // order breaking ties) against the reserved slots (by capacity).
  std::vector<std::size_t> order(winners.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(tenants[winners[a]].area, a) <
           std::make_pair(tenants[winners[b]].area, b);
  });
  std::sort(reserved.begin(), reserved.end(), [&](SlotIdx a, SlotIdx b) {
    return std::make_pair(slots[a].capacity, a) <
           std::make_pair(slots[b].capacity, b);
  });
  for (std::size_t i = 0; i < order.size(); ++i)
    planned[reserved[i]] = winners[order[i]];

  // --- competition stage ------------------------------------------------
  std::vector<SlotIdx> occupied;
  for (SlotIdx s = 0; s < slots.size(); ++s)
    if (slots[s].occupant != kNoTenant || planned[s] != kNoTenant)
      occupied.push_back(s);
  std::sort(occupied.begin(), occupied.end(), [&](SlotIdx a, SlotIdx b) {
    return std::make_pair(slots[a].capacity, a) <
           std::make_pair(slots[b].capacity, b);
  });

  for (SlotIdx s : occupied) {
    const bool fresh = planned[s] != kNoTenant;
    const TenantIdx inc = fresh ? planned[s] : slots[s].occupant;
    const std::uint64_t grants = fresh ? 1 : slots[s].grants_since_eval;
    const std::uint64_t threshold =
        defended_credit(ledger.credit(inc), tenants[inc].adjustment_value, grants);

    TenantIdx best = kNoTenant;
    for (TenantIdx t = 0; t < tenants.size(); ++t) {
      if (t == inc) continue;
      if (queue.pending_count(t) == 0) continue;
      if (tenants[t].area > slots[s].capacity) continue;
      count_comparison();
      if (best == kNoTenant || ledger.credit(t) < ledger.credit(best) ||
          (ledger.credit(t) == ledger.credit(best) &&
           queue.front_rank(t) > queue.front_rank(best)))
        best = t;
    }
    count_comparison();
    if (best == kNoTenant || ledger.credit(best) >= threshold) continue;

    // One swap per slot per interval; the loser may contest other slots
    // this boundary but not this one.
    ledger.revoke(tenants[inc]);
    queue.enqueue({inc, interval});
    if (!fresh) d.preemptions.push_back(s);
    ledger.grant(tenants[best]);
    queue.consume_newest(best);
    planned[s] = best;
  }

  // --- reconfiguration stage --------------------------------------------
  for (SlotIdx s = 0; s < slots.size(); ++s) {
    if (planned[s] == kNoTenant) continue;
    d.assignments.push_back({s, planned[s]});
    if (planned[s] != slots[s].configured) d.pr_events.push_back(s);
  }
  return d;
}

}  // namespace themis
