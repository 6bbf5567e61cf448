#include "themis/metrics.hpp"

#include <numeric>

namespace themis {

namespace {

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t q = a / g;
  std::uint64_t out;
  if (__builtin_mul_overflow(q, b, &out))
    throw OverflowError("lcm of workloads exceeds the 64-bit unsigned range");
  return out;
}

}  // namespace

std::uint64_t lcm_of_workloads(std::span<const TenantProfile> tenants) {
  if (tenants.empty())
    throw ConfigError("lcm_of_workloads: empty tenant sequence");
  std::uint64_t acc = 1;
  for (const auto& t : tenants) acc = checked_lcm(acc, t.adjustment_value);
  return acc;
}

std::vector<std::uint64_t> desired_hmta(std::span<const TenantProfile> tenants) {
  std::uint64_t lcm = lcm_of_workloads(tenants);
  std::vector<std::uint64_t> out;
  out.reserve(tenants.size());
  for (const auto& t : tenants) out.push_back(lcm / t.adjustment_value);
  return out;
}

std::uint64_t desired_total_execution_time(
    std::span<const TenantProfile> tenants) {
  auto hmta = desired_hmta(tenants);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < tenants.size(); ++i) {
    std::uint64_t term;
    if (__builtin_mul_overflow(static_cast<std::uint64_t>(tenants[i].comp_time),
                               hmta[i], &term) ||
        __builtin_add_overflow(total, term, &total))
      throw OverflowError("desired total execution time overflows 64 bits");
  }
  return total;
}

Rational desired_average_allocation(std::span<const TenantProfile> tenants,
                                    std::uint32_t slot_count) {
  if (slot_count < 1)
    throw ConfigError("desired_average_allocation: slot_count must be >= 1");
  std::uint64_t lcm = lcm_of_workloads(tenants);
  std::uint64_t total = desired_total_execution_time(tenants);
  if (lcm > static_cast<std::uint64_t>(INT64_MAX) ||
      total > static_cast<std::uint64_t>(INT64_MAX))
    throw OverflowError("fairness target exceeds the representable range");
  return Rational(static_cast<std::int64_t>(lcm),
                  static_cast<std::int64_t>(total)) *
         Rational(static_cast<std::int64_t>(slot_count));
}

FairnessTarget fairness_target(std::span<const TenantProfile> tenants,
                               std::uint32_t slot_count) {
  FairnessTarget t;
  t.lcm_workload = lcm_of_workloads(tenants);
  t.desired_hmta = desired_hmta(tenants);
  t.desired_total_execution_time = desired_total_execution_time(tenants);
  t.desired_avg_allocation_single_slot = desired_average_allocation(tenants, 1);
  t.desired_avg_allocation = desired_average_allocation(tenants, slot_count);
  return t;
}

Rational stfs_desired_allocation(std::uint64_t total_pr_area,
                                 std::uint64_t tenant_count) {
  if (tenant_count == 0)
    throw ConfigError("stfs_desired_allocation: zero tenants");
  return Rational(static_cast<std::int64_t>(total_pr_area),
                  static_cast<std::int64_t>(tenant_count));
}

Rational stfs_average_allocation(std::uint64_t area, std::uint64_t hmta,
                                 std::uint64_t nti) {
  if (nti == 0) throw ContractError("stfs_average_allocation: nti must be >= 1");
  std::uint64_t num;
  if (__builtin_mul_overflow(area, hmta, &num) ||
      num > static_cast<std::uint64_t>(INT64_MAX))
    throw OverflowError("area * hmta overflows");
  return Rational(static_cast<std::int64_t>(num),
                  static_cast<std::int64_t>(nti));
}

StfsTarget stfs_target(std::span<const TenantProfile> tenants,
                       std::uint64_t total_pr_area) {
  if (tenants.empty()) throw ConfigError("stfs_target: empty tenant sequence");
  StfsTarget out;
  out.desired_avg_allocation =
      stfs_desired_allocation(total_pr_area, tenants.size());
  std::uint64_t area_lcm = 1;
  for (const auto& t : tenants) area_lcm = checked_lcm(area_lcm, t.area);
  out.desired_hmta.reserve(tenants.size());
  std::uint64_t nti = 0;
  for (const auto& t : tenants) {
    std::uint64_t h = area_lcm / t.area;
    out.desired_hmta.push_back(h);
    if (__builtin_add_overflow(nti, h, &nti))
      throw OverflowError("stfs nti overflows");
  }
  out.nti = nti;
  return out;
}

Rational average_allocation(std::uint64_t credit, TimeUnit elapsed) {
  if (elapsed == 0)
    throw ContractError("average_allocation: elapsed must be >= 1");
  if (credit > static_cast<std::uint64_t>(INT64_MAX) ||
      elapsed > static_cast<std::uint64_t>(INT64_MAX))
    throw OverflowError("average_allocation operands exceed 64-bit range");
  return Rational(static_cast<std::int64_t>(credit),
                  static_cast<std::int64_t>(elapsed));
}

Rational sum_of_differences(std::span<const Rational> avg_allocs,
                            const Rational& desired) {
  if (avg_allocs.empty())
    throw ConfigError("sum_of_differences: empty allocation map");
  Rational acc;
  for (const auto& a : avg_allocs) acc += (a - desired).abs();
  return acc;
}

}  // namespace themis
