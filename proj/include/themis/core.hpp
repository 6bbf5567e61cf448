#ifndef THEMIS_CORE_HPP
#define THEMIS_CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "themis/errors.hpp"

namespace themis {

using TimeUnit = std::uint64_t;   // abstract base time units
using TenantIdx = std::uint32_t;  // index into the scenario tenant list
using SlotIdx = std::uint32_t;    // index into the scenario slot list

inline constexpr TenantIdx kNoTenant = UINT32_MAX;

/// A tenant's immutable workload profile. The adjustment value is the
/// credit granted per allocation and revoked per preemption.
struct TenantProfile {
  TenantIdx id = 0;
  std::string name;
  std::uint32_t area = 1;       // >= 1, abstract area units
  std::uint32_t comp_time = 1;  // >= 1, base time units per task
  std::uint64_t adjustment_value = 1;  // == area * comp_time

  TenantProfile() = default;
  TenantProfile(TenantIdx id_, std::string name_, std::uint32_t area_,
                std::uint32_t comp_time_)
      : id(id_), name(std::move(name_)), area(area_), comp_time(comp_time_),
        adjustment_value(static_cast<std::uint64_t>(area_) * comp_time_) {
    if (area_ < 1 || comp_time_ < 1)
      throw ConfigError("tenant '" + name + "': area and comp_time must be >= 1");
  }
};

/// A partially reconfigurable slot. `configured` is the identity of the
/// bitstream currently loaded; it persists across idle gaps, so a tenant
/// returning to its previous slot needs no reconfiguration.
struct SlotState {
  SlotIdx id = 0;  // 1-based display id
  std::uint32_t capacity = 1;
  std::uint32_t bitstream_kb = 1;
  TenantIdx occupant = kNoTenant;
  TimeUnit remaining = 0;  // task time left; 0 iff no occupant (latency aside)
  TenantIdx configured = kNoTenant;
  TimeUnit pr_cooldown = 0;  // reconfiguration latency still to elapse
  // Occupancy grants on this slot since the previous boundary evaluation.
  // The competition stage discounts the incumbent by this many AVs (min 1).
  std::uint64_t grants_since_eval = 0;
};

struct Request {
  TenantIdx tenant = kNoTenant;
  std::uint64_t submit_interval = 0;
};

/// LIFO task queue. Requests of one tenant are interchangeable, so the
/// queue also supports per-tenant access: pending counts, the dequeue rank
/// of a tenant's freshest request (used for tie-breaks), and consuming a
/// tenant's freshest request directly. The global LIFO view is kept with a
/// lazily pruned stack so both access paths stay O(1) amortized.
class TaskQueue {
 public:
  explicit TaskQueue(std::size_t tenant_count) : per_tenant_(tenant_count) {}

  void enqueue(const Request& r) {
    if (r.tenant >= per_tenant_.size())
      throw ContractError("enqueue: unknown tenant index");
    std::uint64_t seq = next_seq_++;
    per_tenant_[r.tenant].push_back(Entry{seq, r.submit_interval});
    order_.push_back({seq, r.tenant});
    ++size_;
  }

  /// Removes and returns the most recently enqueued request.
  Request dequeue() {
    prune();
    if (order_.empty())
      throw ContractError("dequeue: task queue is empty");
    auto [seq, tenant] = order_.back();
    order_.pop_back();
    auto& stack = per_tenant_[tenant];
    Request out{tenant, stack.back().submit_interval};
    stack.pop_back();
    --size_;
    return out;
  }

  /// Removes the freshest pending request of one tenant.
  Request consume_newest(TenantIdx t) {
    auto& stack = per_tenant_.at(t);
    if (stack.empty())
      throw ContractError("consume_newest: tenant has no pending request");
    Request out{t, stack.back().submit_interval};
    stack.pop_back();
    --size_;
    return out;  // matching order_ entry is pruned lazily
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }

  std::uint64_t pending_count(TenantIdx t) const {
    return per_tenant_.at(t).size();
  }

  /// Sequence number of the tenant's freshest request; higher dequeues
  /// earlier under LIFO. 0 when the tenant has nothing pending.
  std::uint64_t front_rank(TenantIdx t) const {
    const auto& stack = per_tenant_.at(t);
    return stack.empty() ? 0 : stack.back().seq;
  }

  struct Entry {
    std::uint64_t seq;
    std::uint64_t submit_interval;
  };

  // Serialization access (engine state snapshots).
  const std::vector<std::vector<Entry>>& per_tenant_entries() const {
    return per_tenant_;
  }
  std::uint64_t next_seq() const { return next_seq_; }
  void restore(std::vector<std::vector<Entry>> entries, std::uint64_t next_seq);

 private:
  void prune() {
    while (!order_.empty()) {
      auto [seq, tenant] = order_.back();
      const auto& stack = per_tenant_[tenant];
      if (!stack.empty() && stack.back().seq == seq) return;
      order_.pop_back();  // stale: consumed through the per-tenant path
    }
  }

  std::vector<std::vector<Entry>> per_tenant_;  // back = freshest
  std::vector<std::pair<std::uint64_t, TenantIdx>> order_;
  std::uint64_t next_seq_ = 1;
  std::size_t size_ = 0;
};

/// Per-tenant running counters. credit == adjustment_value * hmta holds at
/// all times; grants and revocations keep the pair in lock step.
class AllocationLedger {
 public:
  explicit AllocationLedger(std::size_t tenant_count)
      : credit_(tenant_count, 0), hmta_(tenant_count, 0) {}

  void grant(const TenantProfile& t) {
    credit_[t.id] += t.adjustment_value;
    hmta_[t.id] += 1;
  }

  void revoke(const TenantProfile& t) {
    if (credit_[t.id] < t.adjustment_value || hmta_[t.id] == 0)
      throw ContractError("ledger: revoke would drive tenant '" + t.name +
                          "' negative");
    credit_[t.id] -= t.adjustment_value;
    hmta_[t.id] -= 1;
  }

  std::uint64_t credit(TenantIdx t) const { return credit_.at(t); }
  std::uint64_t hmta(TenantIdx t) const { return hmta_.at(t); }
  std::size_t tenant_count() const { return credit_.size(); }

  const std::vector<std::uint64_t>& credits() const { return credit_; }
  const std::vector<std::uint64_t>& hmtas() const { return hmta_; }
  void restore(std::vector<std::uint64_t> credit, std::vector<std::uint64_t> hmta) {
    credit_ = std::move(credit);
    hmta_ = std::move(hmta);
  }

 private:
  std::vector<std::uint64_t> credit_;
  std::vector<std::uint64_t> hmta_;
};

struct SimClock {
  TimeUnit now = 0;
  TimeUnit interval_length = 1;

  std::uint64_t interval_index() const { return now / interval_length; }
};

}  // namespace themis

#endif
