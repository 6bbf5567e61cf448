#ifndef THEMIS_THEMIS_POLICY_HPP
#define THEMIS_THEMIS_POLICY_HPP

#include "themis/engine.hpp"

namespace themis {

/// The credit an incumbent defends in the competition: its ledger credit
/// minus one adjustment value per occupancy grant the slot gave it since
/// the previous evaluation (at least one, covering the in-flight task).
std::uint64_t defended_credit(std::uint64_t incumbent_credit,
                              std::uint64_t incumbent_av,
                              std::uint64_t grants_since_eval);

/// Competition rule: the challenger takes the slot iff its credit is
/// strictly below the incumbent's defended credit. Ties keep the
/// incumbent, which avoids gratuitous reconfiguration.
bool swapping_wins(std::uint64_t challenger_credit,
                   std::uint64_t incumbent_credit, std::uint64_t incumbent_av,
                   std::uint64_t grants_since_eval = 1);

/// Workload-product fair scheduler. Each boundary runs three stages:
///  - fill: empty slots go to the pending tenants with the lowest credit
///    (LIFO dequeue order breaks ties); winners are matched to slots
///    smaller-tenant-to-smaller-slot.
///  - competition: each occupied slot may swap to the lowest-credit pending
///    challenger that fits and beats the incumbent's defended credit; the
///    evicted tenant is re-queued and its in-flight grant revoked.
///  - reconfiguration: a PR is declared only where the incoming tenant
///    differs from the bitstream already loaded.
class ThemisPolicy : public Policy {
 public:
  explicit ThemisPolicy(const Scenario&) {}
  std::string name() const override { return "themis"; }
  PolicyDecision schedule_interval(Simulation& sim) override;
};

}  // namespace themis

#endif
