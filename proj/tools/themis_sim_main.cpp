#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "themis/baselines.hpp"
#include "themis/energy.hpp"
#include "themis/engine.hpp"
#include "themis/report.hpp"

namespace {

using namespace themis;

struct CommonOpts {
  std::string config;
  std::string out_dir = "out";
  std::uint64_t interval = 0;  // 0 = keep the config value
  std::uint64_t horizon = 0;
  std::int64_t seed = -1;
};

Scenario load_with_overrides(const CommonOpts& o) {
  Scenario sc = load_scenario_file(o.config);
  if (o.interval != 0) sc.interval_length = o.interval;
  if (o.horizon != 0) sc.horizon = o.horizon;
  if (o.seed >= 0) sc.demand.seed = static_cast<std::uint64_t>(o.seed);
  sc.validate();
  return sc;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_out = true) {
  cmd->add_option("--config", o.config, "Scenario config (JSON)")->required();
  cmd->add_option("--interval", o.interval, "Override interval_length");
  cmd->add_option("--horizon", o.horizon, "Override horizon (base time units)");
  cmd->add_option("--seed", o.seed, "Override the demand seed");
  if (with_out) cmd->add_option("--out", o.out_dir, "Output directory");
}

void print_report(const RunReport& r) {
  std::cout << "policy        " << r.policy << "\n"
            << "final SOD     " << r.final_sod << "\n"
            << "desired alloc " << r.desired_allocation << "\n"
            << "PR count      " << r.pr_count << "\n"
            << "energy (mJ)   " << r.total_energy_mj << "\n"
            << "utilization   " << r.utilization << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator for fair multi-tenant FPGA slot "
               "scheduling under partial reconfiguration"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_policy = "themis";
  bool gnuplot = false;
  auto* run = app.add_subcommand("run", "Simulate one policy and export results");
  add_common(run, run_opts);
  run->add_option("--policy", run_policy, "Scheduling policy");
  run->add_flag("--gnuplot", gnuplot, "Also write a gnuplot script");

  CommonOpts cmp_opts;
  std::string policies_arg = "themis,stfs,prr,rrr,drr";
  auto* cmp = app.add_subcommand("compare",
                                 "Run several policies on the identical scenario");
  add_common(cmp, cmp_opts);
  cmp->add_option("--policies", policies_arg, "Comma-separated policy list");

  CommonOpts sweep_opts;
  std::string sweep_policy = "themis";
  std::string intervals_arg;
  auto* swp = app.add_subcommand("sweep",
                                 "Energy/fairness trade-off over interval lengths");
  add_common(swp, sweep_opts);
  swp->add_option("--policy", sweep_policy, "Scheduling policy");
  swp->add_option("--intervals", intervals_arg, "Comma-separated interval list")
      ->required();

  CommonOpts ver_opts;
  auto* ver = app.add_subcommand("verify",
                                 "Recompute a run's metrics from trace.csv and "
                                 "check them against report.json");
  add_common(ver, ver_opts);

  CommonOpts tgt_opts;
  auto* tgt = app.add_subcommand("targets",
                                 "Print the fairness targets for a config");
  add_common(tgt, tgt_opts, /*with_out=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      Scenario sc = load_with_overrides(run_opts);
      RunReport r = run_to_files(sc, run_policy, run_opts.out_dir, gnuplot);
      print_report(r);
      std::cout << "wrote trace.csv, snapshots.csv, report.json to "
                << run_opts.out_dir << "\n";
    } else if (cmp->parsed()) {
      Scenario sc = load_with_overrides(cmp_opts);
      std::vector<std::string> names;
      std::stringstream ss(policies_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) names.push_back(tok);
      auto rows = compare_policies(sc, names, cmp_opts.out_dir);
      std::printf("%-8s %12s %10s %12s %12s\n", "policy", "final_sod",
                  "pr_count", "energy_mj", "utilization");
      for (const auto& r : rows)
        std::printf("%-8s %12s %10llu %12s %12s\n", r.policy.c_str(),
                    r.final_sod.c_str(),
                    static_cast<unsigned long long>(r.pr_count),
                    r.total_energy_mj.c_str(), r.utilization.c_str());
      std::cout << "per-policy outputs under " << cmp_opts.out_dir << "/\n";
    } else if (swp->parsed()) {
      Scenario sc = load_with_overrides(sweep_opts);
      std::vector<TimeUnit> intervals;
      std::stringstream ss(intervals_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
          intervals.push_back(std::stoull(tok));
        } catch (const std::exception&) {
          throw ConfigError("--intervals: '" + tok + "' is not a number");
        }
      }
      auto rows = tradeoff_sweep(sc, sweep_policy, intervals);
      std::filesystem::create_directories(sweep_opts.out_dir);
      std::ofstream out(std::filesystem::path(sweep_opts.out_dir) / "sweep.csv",
                        std::ios::binary);
      out << sweep_to_csv(rows);
      std::cout << sweep_to_csv(rows);
    } else if (ver->parsed()) {
      Scenario sc = load_with_overrides(ver_opts);
      verify_run_dir(sc, ver_opts.out_dir);
      std::cout << "verify: report.json matches recomputation from trace.csv\n";
    } else if (tgt->parsed()) {
      Scenario sc = load_with_overrides(tgt_opts);
      FairnessTarget t = fairness_target(
          sc.tenants, static_cast<std::uint32_t>(sc.slots.size()));
      StfsTarget st = stfs_target(sc.tenants, sc.total_pr_area());
      std::cout << "lcm_workload                 " << t.lcm_workload << "\n";
      std::cout << "desired_total_execution_time " << t.desired_total_execution_time
                << "\n";
      std::cout << "desired_avg_alloc (1 slot)   "
                << t.desired_avg_allocation_single_slot.dec4() << "\n";
      std::cout << "desired_avg_alloc (" << sc.slots.size() << " slots)  "
                << t.desired_avg_allocation.dec4() << "\n";
      std::cout << "desired_hmta:\n";
      for (TenantIdx i = 0; i < sc.tenants.size(); ++i)
        std::cout << "  " << sc.tenants[i].name << " " << t.desired_hmta[i] << "\n";
      std::cout << "stfs_desired_alloc (area/N)  "
                << st.desired_avg_allocation.dec4() << "\n";
      std::cout << "stfs_nti                     " << st.nti << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
