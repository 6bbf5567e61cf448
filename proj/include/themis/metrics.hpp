#ifndef THEMIS_METRICS_HPP
#define THEMIS_METRICS_HPP

#include <map>
#include <span>
#include <vector>

#include "themis/core.hpp"
#include "themis/rational.hpp"

namespace themis {

/// Static fairness targets for the workload-product metric: the LCM of all
/// area-time products, the per-tenant allocation counts that equalize it,
/// the execution time needed to reach them on one continuously busy slot,
/// and the resulting average-allocation target (scaled by slot count).
struct FairnessTarget {
  std::uint64_t lcm_workload = 1;
  std::vector<std::uint64_t> desired_hmta;  // indexed by tenant
  std::uint64_t desired_total_execution_time = 1;
  Rational desired_avg_allocation_single_slot;
  Rational desired_avg_allocation;  // single-slot value * slot count
};

/// Area-only targets used by the STFS baseline for its internal ranking
/// and for reporting. desired_hmta equalizes area * hmta against the LCM
/// of areas; nti is the interval count needed to complete one such cycle.
struct StfsTarget {
  Rational desired_avg_allocation;  // total PR area / tenant count
  std::uint64_t nti = 1;
  std::vector<std::uint64_t> desired_hmta;
};

/// LCM of all area-time products. Throws OverflowError past 64 bits.
std::uint64_t lcm_of_workloads(std::span<const TenantProfile> tenants);

/// desired_hmta[i] = lcm_of_workloads / (area_i * comp_time_i)
std::vector<std::uint64_t> desired_hmta(std::span<const TenantProfile> tenants);

/// Sum over tenants of comp_time_i * desired_hmta_i.
std::uint64_t desired_total_execution_time(std::span<const TenantProfile> tenants);

/// (lcm / total execution time) * slot_count, exact.
Rational desired_average_allocation(std::span<const TenantProfile> tenants,
                                    std::uint32_t slot_count);

FairnessTarget fairness_target(std::span<const TenantProfile> tenants,
                               std::uint32_t slot_count);

Rational stfs_desired_allocation(std::uint64_t total_pr_area,
                                 std::uint64_t tenant_count);

/// Area-only average: (area * hmta) / nti.
Rational stfs_average_allocation(std::uint64_t area, std::uint64_t hmta,
                                 std::uint64_t nti);

StfsTarget stfs_target(std::span<const TenantProfile> tenants,
                       std::uint64_t total_pr_area);

/// Instantaneous average allocation: credit / elapsed.
Rational average_allocation(std::uint64_t credit, TimeUnit elapsed);

/// Sum over tenants of |avg_alloc - desired|.
Rational sum_of_differences(std::span<const Rational> avg_allocs,
                            const Rational& desired);

}  // namespace themis

#endif
