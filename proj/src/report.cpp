#include "themis/report.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace themis {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string RunReport::to_json() const {
  nlohmann::json j;
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(scenario_digest));
  j["scenario_digest"] = digest;
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(demand_digest));
  j["demand_digest"] = digest;
  j["policy"] = policy;
  j["final_sod"] = final_sod;
  for (const auto& [name, v] : final_avg_alloc) j["final_avg_alloc"][name] = v;
  j["desired_allocation"] = desired_allocation;
  j["pr_count"] = pr_count;
  j["total_energy_mj"] = total_energy_mj;
  j["utilization"] = utilization;
  j["wall_seconds"] = wall_seconds;
  j["interval_length"] = interval_length;
  j["horizon"] = horizon;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

RunReport build_report(const Scenario& sc, const std::string& policy,
                       const SimulationTrace& trace, double wall_seconds) {
  RunReport r;
  r.scenario_digest = scenario_digest(sc);
  r.demand_digest = trace.demand_digest;
  r.policy = policy;
  const Snapshot& last = trace.final_snapshot();
  r.final_sod = last.sod.dec4();
  for (TenantIdx t = 0; t < sc.tenants.size(); ++t)
    r.final_avg_alloc.push_back({sc.tenants[t].name, last.avg_alloc[t].dec4()});
  r.desired_allocation =
      desired_average_allocation(sc.tenants,
                                 static_cast<std::uint32_t>(sc.slots.size()))
          .dec4();
  r.pr_count = last.pr_count;
  r.total_energy_mj = last.energy_mj.dec4();
  r.utilization = last.utilization.dec4();
  r.wall_seconds = wall_seconds;
  r.interval_length = sc.interval_length;
  r.horizon = sc.horizon;
  r.seed = sc.demand.seed;
  return r;
}

RunReport run_to_files(const Scenario& sc, const std::string& policy,
                       const std::string& out_dir, bool gnuplot) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto t0 = std::chrono::steady_clock::now();
  SimulationTrace trace = run_simulation(sc, policy);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  RunReport report = build_report(sc, policy, trace, wall);
  write_file(fs::path(out_dir) / "trace.csv", trace_to_csv(trace, sc));
  write_file(fs::path(out_dir) / "snapshots.csv", snapshots_to_csv(trace, sc));
  write_file(fs::path(out_dir) / "report.json", report.to_json());
  if (gnuplot) {
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set key outside\n"
       << "set xlabel 'interval'\n"
       << "set ylabel 'average allocation'\n"
       << "desired = " << report.desired_allocation << "\n"
       << "tenants = '";
    for (TenantIdx t = 0; t < sc.tenants.size(); ++t)
      gp << (t ? " " : "") << sc.tenants[t].name;
    gp << "'\n"
       << "plot for [t in tenants] 'snapshots.csv' "
          "using 1:(strcol(2) eq t ? $3 : 1/0) with lines title t, \\\n"
       << "     desired with lines dashtype 2 title 'desired'\n";
    write_file(fs::path(out_dir) / "plot.gp", gp.str());
  }
  return report;
}

std::vector<CompareRow> compare_policies(const Scenario& sc,
                                         const std::vector<std::string>& policies,
                                         const std::string& out_dir,
                                         bool parallel) {
  namespace fs = std::filesystem;
  if (policies.size() < 2)
    throw ConfigError("compare: need at least two policies");
  for (const auto& p : policies) make_policy(p, sc);  // fail fast on names
  fs::create_directories(out_dir);
  std::vector<CompareRow> rows(policies.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < policies.size(); ++i) {
    try {
      RunReport r = run_to_files(sc, policies[i],
                                 (fs::path(out_dir) / policies[i]).string());
      rows[i] = {policies[i], r.final_sod,        r.pr_count,
                 r.total_energy_mj, r.utilization, r.demand_digest};
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::ostringstream csv;
  csv << "policy,final_sod,pr_count,energy_mj,utilization,demand_digest\n";
  for (const auto& r : rows) {
    char digest[32];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(r.demand_digest));
    csv << r.policy << ',' << r.final_sod << ',' << r.pr_count << ','
        << r.total_energy_mj << ',' << r.utilization << ',' << digest << '\n';
  }
  write_file(fs::path(out_dir) / "comparison.csv", csv.str());
  return rows;
}

void verify_run_dir(const Scenario& sc, const std::string& out_dir) {
  namespace fs = std::filesystem;
  nlohmann::json report =
      nlohmann::json::parse(read_file(fs::path(out_dir) / "report.json"));
  if (report.at("horizon").get<TimeUnit>() != sc.horizon ||
      report.at("interval_length").get<TimeUnit>() != sc.interval_length)
    throw ContractError(
        "verify: the report was produced with a different horizon or "
        "interval than the given config/overrides");
  std::string csv = read_file(fs::path(out_dir) / "trace.csv");

  // Rebuild the event list from trace.csv.
  SimulationTrace trace;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  if (line != "time,slot,event,tenant")
    throw ContractError("verify: unexpected trace.csv header");
  auto tenant_by_name = [&](const std::string& name) -> TenantIdx {
    for (const auto& t : sc.tenants)
      if (t.name == name) return t.id;
    throw ContractError("verify: unknown tenant '" + name + "' in trace");
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string time_s, slot_s, kind_s, tenant_s;
    std::getline(row, time_s, ',');
    std::getline(row, slot_s, ',');
    std::getline(row, kind_s, ',');
    std::getline(row, tenant_s, ',');
    TraceEvent e;
    e.time = std::stoull(time_s);
    e.slot = static_cast<SlotIdx>(std::stoul(slot_s));
    if (kind_s == "ASSIGN") e.kind = EventKind::kAssign;
    else if (kind_s == "PREEMPT") e.kind = EventKind::kPreempt;
    else if (kind_s == "COMPLETE") e.kind = EventKind::kComplete;
    else if (kind_s == "PR") e.kind = EventKind::kPr;
    else if (kind_s == "IDLE") e.kind = EventKind::kIdle;
    else throw ContractError("verify: unknown event kind '" + kind_s + "'");
    e.tenant = tenant_s.empty() ? kNoTenant : tenant_by_name(tenant_s);
    trace.events.push_back(e);
  }

  // Credits folded from ASSIGN/PREEMPT events give the final allocations.
  std::vector<std::uint64_t> credit(sc.tenants.size(), 0);
  std::uint64_t pr_count = 0;
  for (const auto& e : trace.events) {
    if (e.kind == EventKind::kAssign)
      credit[e.tenant] += sc.tenants[e.tenant].adjustment_value;
    else if (e.kind == EventKind::kPreempt)
      credit[e.tenant] -= sc.tenants[e.tenant].adjustment_value;
    else if (e.kind == EventKind::kPr)
      ++pr_count;
  }
  std::vector<Rational> avg;
  for (TenantIdx t = 0; t < sc.tenants.size(); ++t)
    avg.push_back(average_allocation(credit[t], sc.horizon));
  Rational desired = desired_average_allocation(
      sc.tenants, static_cast<std::uint32_t>(sc.slots.size()));
  Rational sod = sum_of_differences(avg, desired);
  Rational energy = total_energy(trace, EnergyModel::from_scenario(sc));
  Rational util = slot_utilization(trace, sc);

  auto expect = [&](const char* key, const std::string& got) {
    std::string want = report.at(key).get<std::string>();
    if (want != got)
      throw ContractError(std::string("verify: ") + key + " mismatch: report " +
                          want + " vs recomputed " + got);
  };
  expect("final_sod", sod.dec4());
  expect("total_energy_mj", energy.dec4());
  expect("utilization", util.dec4());
  if (report.at("pr_count").get<std::uint64_t>() != pr_count)
    throw ContractError("verify: pr_count mismatch");
  for (TenantIdx t = 0; t < sc.tenants.size(); ++t) {
    std::string want =
        report.at("final_avg_alloc").at(sc.tenants[t].name).get<std::string>();
    if (want != avg[t].dec4())
      throw ContractError("verify: final_avg_alloc mismatch for '" +
                          sc.tenants[t].name + "'");
  }
}

}  // namespace themis
