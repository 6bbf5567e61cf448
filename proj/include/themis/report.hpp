#ifndef THEMIS_REPORT_HPP
#define THEMIS_REPORT_HPP

#include <string>
#include <vector>

#include "themis/energy.hpp"
#include "themis/engine.hpp"

namespace themis {

/// Pure summary of one finished run; every value is recomputable from the
/// exported trace, which `verify_run_dir` checks.
struct RunReport {
  std::uint64_t scenario_digest = 0;
  std::uint64_t demand_digest = 0;
  std::string policy;
  std::string final_sod;
  std::vector<std::pair<std::string, std::string>> final_avg_alloc;  // name, 4dp
  std::string desired_allocation;
  std::uint64_t pr_count = 0;
  std::string total_energy_mj;
  std::string utilization;
  double wall_seconds = 0;
  TimeUnit interval_length = 0;
  TimeUnit horizon = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

RunReport build_report(const Scenario& sc, const std::string& policy,
                       const SimulationTrace& trace, double wall_seconds);

/// Runs one policy and writes trace.csv, snapshots.csv, and report.json
/// into out_dir (created if missing). Optionally drops a gnuplot script
/// next to them. Returns the report.
RunReport run_to_files(const Scenario& sc, const std::string& policy,
                       const std::string& out_dir, bool gnuplot = false);

struct CompareRow {
  std::string policy;
  std::string final_sod;
  std::uint64_t pr_count = 0;
  std::string total_energy_mj;
  std::string utilization;
  std::uint64_t demand_digest = 0;
};

/// Runs each policy on the identical scenario (identical seed) into
/// out_dir/<policy>/ and writes comparison.csv plus a summary JSON. Member
/// runs execute in parallel when OpenMP is available.
std::vector<CompareRow> compare_policies(const Scenario& sc,
                                         const std::vector<std::string>& policies,
                                         const std::string& out_dir,
                                         bool parallel = true);

/// Re-derives SOD, energy, and utilization from the exported trace.csv and
/// compares them against report.json at full precision of the 4-decimal
/// rendering. Throws ContractError on the first mismatch.
void verify_run_dir(const Scenario& sc, const std::string& out_dir);

}  // namespace themis

#endif
