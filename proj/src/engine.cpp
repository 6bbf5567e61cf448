#include "themis/engine.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace themis {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::kAssign: return "ASSIGN";
    case EventKind::kPreempt: return "PREEMPT";
    case EventKind::kComplete: return "COMPLETE";
    case EventKind::kPr: return "PR";
    case EventKind::kIdle: return "IDLE";
  }
  return "?";
}

namespace {

void fold_digest(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xFF;
    h *= 0x100000001b3ull;
  }
}

}  // namespace

Simulation::Simulation(Scenario scenario, std::unique_ptr<Policy> policy)
    : scenario_(std::move(scenario)),
      policy_(std::move(policy)),
      ledger_(scenario_.tenants.size()),
      queue_(scenario_.tenants.size()) {
  scenario_.validate();
  policy_->check_scenario(scenario_);
  clock_.interval_length = scenario_.interval_length;
  slots_.resize(scenario_.slots.size());
  for (SlotIdx i = 0; i < slots_.size(); ++i) {
    slots_[i].id = i + 1;
    slots_[i].capacity = scenario_.slots[i].capacity;
    slots_[i].bitstream_kb = scenario_.slots[i].bitstream_kb;
  }
  desired_ = desired_average_allocation(scenario_.tenants,
                                        static_cast<std::uint32_t>(slots_.size()));
  pr_energy_.reserve(slots_.size());
  if (scenario_.kb_scaling) {
    std::uint64_t kb_sum = 0;
    for (const auto& s : scenario_.slots) kb_sum += s.bitstream_kb;
    for (const auto& s : scenario_.slots)
      pr_energy_.push_back(s.energy_mj *
                           Rational(static_cast<std::int64_t>(s.bitstream_kb) *
                                        static_cast<std::int64_t>(slots_.size()),
                                    static_cast<std::int64_t>(kb_sum)));
  } else {
    for (const auto& s : scenario_.slots) pr_energy_.push_back(s.energy_mj);
  }
  rng_state_ = scenario_.demand.seed;
  trace_.demand_digest = 0xcbf29ce484222325ull;
}

void Simulation::emit(TimeUnit t, SlotIdx slot, EventKind k, TenantIdx tenant) {
  trace_.events.push_back({t, slots_[slot].id, k, tenant});
}

void Simulation::boundary() {
  const TimeUnit now = clock_.now;
  const std::uint64_t interval = clock_.interval_index();

  auto [requests, next_rng] =
      generate_demands(scenario_.demand, scenario_.tenants, interval, rng_state_);
  rng_state_ = next_rng;
  fold_digest(trace_.demand_digest, interval);
  for (const auto& r : requests) fold_digest(trace_.demand_digest, r.tenant);
  // Enqueue in reverse so the first-listed request dequeues first under
  // LIFO; the generated order is the order the scheduler examines.
  for (auto it = requests.rbegin(); it != requests.rend(); ++it)
    queue_.enqueue(*it);

  PolicyDecision decision = policy_->schedule_interval(*this);
  apply_decision(decision);

  for (SlotIdx s = 0; s < slots_.size(); ++s)
    if (slots_[s].occupant == kNoTenant) emit(now, s, EventKind::kIdle, kNoTenant);
}

void Simulation::apply_decision(const PolicyDecision& d) {
  const TimeUnit now = clock_.now;
  auto preempts = d.preemptions;
  auto assigns = d.assignments;
  auto prs = d.pr_events;
  std::sort(preempts.begin(), preempts.end());
  std::sort(assigns.begin(), assigns.end(),
            [](const auto& a, const auto& b) { return a.slot < b.slot; });
  std::sort(prs.begin(), prs.end());

  for (SlotIdx s : preempts) {
    SlotState& slot = slots_.at(s);
    if (slot.occupant == kNoTenant)
      throw ContractError("preemption of an empty slot");
    emit(now, s, EventKind::kPreempt, slot.occupant);
    slot.occupant = kNoTenant;
    slot.remaining = 0;
    slot.pr_cooldown = 0;
  }

  for (auto& slot : slots_) slot.grants_since_eval = 0;

  for (const auto& a : assigns) {
    SlotState& slot = slots_.at(a.slot);
    const TenantProfile& t = scenario_.tenants.at(a.tenant);
    if (slot.occupant != kNoTenant)
      throw ContractError("assignment to an occupied slot");
    if (t.area > slot.capacity)
      throw ContractError("capacity breach: tenant '" + t.name + "' (area " +
                          std::to_string(t.area) + ") assigned to slot " +
                          std::to_string(slot.id) + " (capacity " +
                          std::to_string(slot.capacity) + ")");
    bool needs_pr = std::binary_search(prs.begin(), prs.end(), a.slot);
    if (t.id != slot.configured && !needs_pr)
      throw ContractError("assignment changes the loaded tenant without a PR");
    slot.occupant = t.id;
    slot.remaining = t.comp_time;
    slot.grants_since_eval = 1;
    slot.pr_cooldown = needs_pr ? scenario_.pr_latency : 0;
    slot.configured = t.id;
    emit(now, a.slot, EventKind::kAssign, t.id);
  }

  for (SlotIdx s : prs) {
    SlotState& slot = slots_.at(s);
    if (slot.occupant == kNoTenant)
      throw ContractError("PR event on a slot with no incoming occupant");
    ++pr_count_;
    energy_mj_ += pr_energy_.at(s);
    emit(now, s, EventKind::kPr, slot.occupant);
  }
}

void Simulation::run_units(TimeUnit n) {
  const TimeUnit chunk_end = clock_.now + n;
  const bool backlog = scenario_.demand.kind == DemandKind::kAlways;
  for (TimeUnit u = 0; u < n; ++u) {
    const TimeUnit t = clock_.now;
    for (SlotIdx s = 0; s < slots_.size(); ++s) {
      SlotState& slot = slots_[s];
      if (slot.occupant == kNoTenant) continue;
      if (slot.pr_cooldown > 0) {
        --slot.pr_cooldown;
        continue;
      }
      ++busy_units_;
      --slot.remaining;
      if (slot.remaining == 0) {
        const TenantProfile& tp = scenario_.tenants[slot.occupant];
        emit(t + 1, s, EventKind::kComplete, slot.occupant);
        if (backlog && t + 1 < chunk_end) {
          // Always-demand: the occupant has unbounded work, so the slot
          // restarts it in place. Same tenant, same bitstream, no PR.
          ledger_.grant(tp);
          ++slot.grants_since_eval;
          slot.remaining = tp.comp_time;
          emit(t + 1, s, EventKind::kAssign, slot.occupant);
        } else {
          slot.occupant = kNoTenant;
        }
      }
    }
    ++clock_.now;
  }
}

void Simulation::take_snapshot() {
  Snapshot s;
  s.interval_index = boundaries_run_ - 1;
  s.time = clock_.now;
  const TimeUnit elapsed = clock_.now;
  s.avg_alloc.reserve(scenario_.tenants.size());
  for (TenantIdx t = 0; t < scenario_.tenants.size(); ++t)
    s.avg_alloc.push_back(average_allocation(ledger_.credit(t), elapsed));
  s.sod = sum_of_differences(s.avg_alloc, desired_);
  s.utilization = Rational(static_cast<std::int64_t>(busy_units_)) /
                  Rational(static_cast<std::int64_t>(slots_.size()) *
                           static_cast<std::int64_t>(elapsed));
  s.pr_count = pr_count_;
  s.energy_mj = energy_mj_;
  trace_.snapshots.push_back(std::move(s));
}

bool Simulation::step_interval() {
  if (done()) return false;
  const TimeUnit chunk =
      std::min<TimeUnit>(scenario_.interval_length, scenario_.horizon - clock_.now);
  boundary();
  ++boundaries_run_;
  run_units(chunk);
  take_snapshot();
  return !done();
}

void Simulation::run_to_horizon() {
  while (step_interval()) {
  }
}

SimulationTrace run_simulation(const Scenario& scenario,
                               const std::string& policy_name) {
  Simulation sim(scenario, make_policy(policy_name, scenario));
  sim.run_to_horizon();
  return sim.trace();
}

Rational slot_utilization(const SimulationTrace& trace, const Scenario& sc) {
  if (sc.horizon == 0) throw ConfigError("slot_utilization: zero horizon");
  struct Running {
    bool busy = false;
    TimeUnit start = 0;  // first unit of actual execution (latency skipped)
  };
  std::vector<Running> run(sc.slots.size());
  std::uint64_t busy = 0;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    const SlotIdx s = e.slot - 1;
    switch (e.kind) {
      case EventKind::kAssign: {
        TimeUnit start = e.time;
        // A PR at the same boundary delays execution by the latency.
        for (std::size_t j = i + 1;
             j < trace.events.size() && trace.events[j].time == e.time; ++j) {
          if (trace.events[j].kind == EventKind::kPr &&
              trace.events[j].slot == e.slot)
            start += sc.pr_latency;
        }
        run[s] = {true, start};
        break;
      }
      case EventKind::kComplete:
      case EventKind::kPreempt:
        if (run[s].busy) {
          busy += e.time > run[s].start ? e.time - run[s].start : 0;
          run[s].busy = false;
        }
        break;
      default:
        break;
    }
  }
  for (SlotIdx s = 0; s < run.size(); ++s)
    if (run[s].busy && sc.horizon > run[s].start)
      busy += sc.horizon - run[s].start;
  return Rational(static_cast<std::int64_t>(busy)) /
         Rational(static_cast<std::int64_t>(sc.slots.size()) *
                  static_cast<std::int64_t>(sc.horizon));
}

std::string trace_to_csv(const SimulationTrace& trace, const Scenario& sc) {
  std::ostringstream out;
  out << "time,slot,event,tenant\n";
  for (const auto& e : trace.events) {
    out << e.time << ',' << e.slot << ',' << event_kind_name(e.kind) << ',';
    if (e.tenant != kNoTenant) out << sc.tenants[e.tenant].name;
    out << '\n';
  }
  return out.str();
}

std::string snapshots_to_csv(const SimulationTrace& trace, const Scenario& sc) {
  std::ostringstream out;
  out << "interval,tenant,avg_alloc,sod,utilization,pr_count,energy_mj\n";
  for (const auto& s : trace.snapshots) {
    for (TenantIdx t = 0; t < sc.tenants.size(); ++t) {
      out << s.interval_index << ',' << sc.tenants[t].name << ','
          << s.avg_alloc[t].dec4() << ',' << s.sod.dec4() << ','
          << s.utilization.dec4() << ',' << s.pr_count << ','
          << s.energy_mj.dec4() << '\n';
    }
  }
  return out.str();
}

std::string Simulation::state_to_json() const {
  nlohmann::json j;
  j["time"] = clock_.now;
  j["rng_state"] = rng_state_;
  j["busy_units"] = busy_units_;
  j["pr_count"] = pr_count_;
  j["energy_num"] = energy_mj_.num();
  j["energy_den"] = energy_mj_.den();
  j["boundaries_run"] = boundaries_run_;
  j["demand_digest"] = trace_.demand_digest;
  for (const auto& s : slots_) {
    j["slots"].push_back({{"occupant", s.occupant},
                          {"remaining", s.remaining},
                          {"configured", s.configured},
                          {"pr_cooldown", s.pr_cooldown},
                          {"grants_since_eval", s.grants_since_eval}});
  }
  j["credits"] = ledger_.credits();
  j["hmtas"] = ledger_.hmtas();
  nlohmann::json q;
  for (const auto& stack : queue_.per_tenant_entries()) {
    nlohmann::json col = nlohmann::json::array();
    for (const auto& e : stack)
      col.push_back({{"seq", e.seq}, {"submit", e.submit_interval}});
    q.push_back(col);
  }
  j["queue"] = q;
  j["queue_next_seq"] = queue_.next_seq();
  std::string pstate;
  policy_->save_state(pstate);
  j["policy"] = nlohmann::json::parse(pstate);
  return j.dump();
}

void Simulation::load_state_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  clock_.now = j["time"].get<TimeUnit>();
  rng_state_ = j["rng_state"].get<std::uint64_t>();
  busy_units_ = j["busy_units"].get<std::uint64_t>();
  pr_count_ = j["pr_count"].get<std::uint64_t>();
  energy_mj_ = Rational(j["energy_num"].get<std::int64_t>(),
                        j["energy_den"].get<std::int64_t>());
  boundaries_run_ = j["boundaries_run"].get<std::uint64_t>();
  trace_.demand_digest = j["demand_digest"].get<std::uint64_t>();
  trace_.events.clear();
  trace_.snapshots.clear();
  const auto& js = j["slots"];
  if (js.size() != slots_.size())
    throw ConfigError("state: slot count mismatch");
  for (SlotIdx i = 0; i < slots_.size(); ++i) {
    slots_[i].occupant = js[i]["occupant"].get<TenantIdx>();
    slots_[i].remaining = js[i]["remaining"].get<TimeUnit>();
    slots_[i].configured = js[i]["configured"].get<TenantIdx>();
    slots_[i].pr_cooldown = js[i]["pr_cooldown"].get<TimeUnit>();
    slots_[i].grants_since_eval = js[i]["grants_since_eval"].get<std::uint64_t>();
  }
  ledger_.restore(j["credits"].get<std::vector<std::uint64_t>>(),
                  j["hmtas"].get<std::vector<std::uint64_t>>());
  std::vector<std::vector<TaskQueue::Entry>> entries;
  for (const auto& col : j["queue"]) {
    std::vector<TaskQueue::Entry> stack;
    for (const auto& e : col)
      stack.push_back({e["seq"].get<std::uint64_t>(),
                       e["submit"].get<std::uint64_t>()});
    entries.push_back(std::move(stack));
  }
  queue_.restore(std::move(entries), j["queue_next_seq"].get<std::uint64_t>());
  policy_->load_state(j["policy"].dump());
}

}  // namespace themis
