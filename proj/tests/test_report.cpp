#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "themis/report.hpp"

using namespace themis;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("themis_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run_to_files writes the three artifacts and verify accepts them") {
  TempDir tmp;
  Scenario sc = reference_scenario(36, 1800);
  RunReport r = run_to_files(sc, "themis", tmp.path.string(), /*gnuplot=*/true);
  CHECK(fs::exists(tmp.path / "trace.csv"));
  CHECK(fs::exists(tmp.path / "snapshots.csv"));
  CHECK(fs::exists(tmp.path / "report.json"));
  CHECK(fs::exists(tmp.path / "plot.gp"));
  CHECK(r.desired_allocation == "1.2430");
  CHECK(r.interval_length == 36);
  CHECK(r.horizon == 1800);

  verify_run_dir(sc, tmp.path.string());

  // corrupting the trace must fail verification
  std::string csv = slurp(tmp.path / "trace.csv");
  auto pos = csv.find("PR");
  REQUIRE(pos != std::string::npos);
  // drop one PR line
  auto line_start = csv.rfind('\n', pos) + 1;
  auto line_end = csv.find('\n', pos) + 1;
  csv.erase(line_start, line_end - line_start);
  std::ofstream(tmp.path / "trace.csv", std::ios::binary) << csv;
  CHECK_THROWS_AS(verify_run_dir(sc, tmp.path.string()), ContractError);
}

TEST_CASE("verify across all policies") {
  for (const char* p : {"stfs", "prr", "rrr", "drr"}) {
    TempDir tmp;
    Scenario sc = reference_scenario(36, 1080);
    run_to_files(sc, p, tmp.path.string());
    verify_run_dir(sc, tmp.path.string());
  }
}

TEST_CASE("csv exports use LF endings and the fixed headers") {
  TempDir tmp;
  Scenario sc = reference_scenario(36, 360);
  run_to_files(sc, "themis", tmp.path.string());
  std::string trace = slurp(tmp.path / "trace.csv");
  CHECK(trace.rfind("time,slot,event,tenant\n", 0) == 0);
  CHECK(trace.find('\r') == std::string::npos);
  std::string snaps = slurp(tmp.path / "snapshots.csv");
  CHECK(snaps.rfind("interval,tenant,avg_alloc,sod,utilization,pr_count,energy_mj\n",
                    0) == 0);
}

TEST_CASE("compare runs share one demand stream and report it") {
  TempDir tmp;
  Scenario sc = homogeneous_scenario(36, 1800, 12345);
  auto rows = compare_policies(sc, {"stfs", "prr", "rrr", "drr"},
                               tmp.path.string());
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.demand_digest == rows[0].demand_digest);
  CHECK(fs::exists(tmp.path / "comparison.csv"));
  CHECK(fs::exists(tmp.path / "stfs" / "report.json"));

  // comparing a policy with itself yields identical rows
  TempDir tmp2;
  auto twin = compare_policies(sc, {"stfs", "stfs"}, tmp2.path.string());
  CHECK(twin[0].final_sod == twin[1].final_sod);
  CHECK(twin[0].pr_count == twin[1].pr_count);

  CHECK_THROWS_AS(compare_policies(sc, {"stfs"}, tmp.path.string()), ConfigError);
}

TEST_CASE("unknown policy names list the valid set") {
  Scenario sc = reference_scenario(36, 360);
  CHECK_THROWS_WITH_AS(make_policy("fifo", sc),
                       doctest::Contains("themis, stfs, prr, rrr, drr"),
                       ConfigError);
}
