#ifndef THEMIS_WORKLOAD_HPP
#define THEMIS_WORKLOAD_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "themis/core.hpp"
#include "themis/rational.hpp"

namespace themis {

/// splitmix64 step: returns (output, advanced state). Pure function, so
/// demand generation stays reproducible across platforms and languages.
std::pair<std::uint64_t, std::uint64_t> splitmix_next(std::uint64_t state);

enum class DemandKind { kAlways, kRandom };

/// Demand model for a scenario. Always-demand resubmits every tenant each
/// interval in a fixed order and gives occupants an unbounded task backlog;
/// random-demand draws 0..2 requests per tenant per interval from a seeded
/// generator, visiting tenants in a shuffled order.
struct DemandModel {
  DemandKind kind = DemandKind::kAlways;
  std::vector<TenantIdx> order;  // always: permutation of the tenant set
  std::uint64_t seed = 0;        // random only
  Rational p0{1, 4}, p1{1, 2}, p2{1, 4};  // request-count probabilities
};

struct SlotSpec {
  std::uint32_t capacity = 1;
  std::uint32_t bitstream_kb = 1000;
  Rational energy_mj{5, 4};  // 1.25 mJ per reconfiguration
};

/// Everything that determines a run.
struct Scenario {
  std::vector<TenantProfile> tenants;
  std::vector<SlotSpec> slots;
  TimeUnit interval_length = 1;
  TimeUnit horizon = 1;
  DemandModel demand;
  TimeUnit pr_latency = 0;
  bool kb_scaling = false;

  std::uint32_t max_tenant_area() const;
  std::uint32_t max_comp_time() const;
  std::uint64_t total_pr_area() const;
  void validate() const;  // throws ConfigError
};

/// The eight benchmark profiles used throughout: (area, comp_time) =
/// AES(2,7) FFT(17,5) SHA(6,8) BFS(12,15) KMP(3,9) GEMM(14,28) SORT(1,14)
/// SPMV(5,14).
std::vector<TenantProfile> builtin_benchmarks();

/// Builds the reference three-slot scenario: slots [4,10,18], bitstreams
/// [1180,1340,837] KB, 1.25 mJ per PR, always-demand in catalog order.
Scenario reference_scenario(TimeUnit interval_length, TimeUnit horizon);

/// Two homogeneous slots [17,17] with seeded random demand.
Scenario homogeneous_scenario(TimeUnit interval_length, TimeUnit horizon,
                              std::uint64_t seed);

/// One interval's worth of demand. Always-demand emits one request per
/// tenant in model order; random-demand shuffles the tenant visitation
/// order and draws k in {0,1,2} per tenant. Returns the advanced PRNG
/// state; always-demand leaves it untouched.
std::pair<std::vector<Request>, std::uint64_t> generate_demands(
    const DemandModel& model, const std::vector<TenantProfile>& tenants,
    std::uint64_t interval_index, std::uint64_t rng_state);

/// Scenario file loading. Accepted keys: tenants[]{name,area,comp_time},
/// slots[]{capacity,bitstream_kb,energy_mj}, interval_length, horizon,
/// demand{kind,order,seed,p0,p1,p2}, pr_latency, kb_scaling. Anything else
/// is rejected with the offending key named.
Scenario load_scenario_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const Scenario& sc);

/// FNV-1a digest of the canonical scenario encoding; echoed into reports
/// so any figure can be traced back to its exact inputs.
std::uint64_t scenario_digest(const Scenario& sc);

}  // namespace themis

#endif
