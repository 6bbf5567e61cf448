#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "themis/energy.hpp"

using namespace themis;

namespace {

SimulationTrace trace_with_prs(std::initializer_list<SlotIdx> slots) {
  SimulationTrace t;
  TimeUnit when = 0;
  for (SlotIdx s : slots) t.events.push_back({when++, s, EventKind::kPr, 0});
  return t;
}

EnergyModel uniform(std::size_t slots, Rational mj) {
  EnergyModel m;
  for (std::size_t i = 0; i < slots; ++i) m.per_slot_mj.push_back(mj);
  return m;
}

}  // namespace

TEST_CASE("energy counts reconfiguration events") {
  EnergyModel m = uniform(3, Rational(5, 4));
  CHECK(total_energy(SimulationTrace{}, m) == Rational(0));
  CHECK(total_energy(trace_with_prs({1, 2, 3}), m) == Rational(15, 4));  // 3.75
  CHECK_THROWS_AS(total_energy(trace_with_prs({4}), m), ContractError);
}

TEST_CASE("energy is additive over trace concatenation") {
  EnergyModel m = uniform(2, Rational(5, 4));
  SimulationTrace a = trace_with_prs({1, 2, 1});
  SimulationTrace b = trace_with_prs({2, 2});
  SimulationTrace ab = a;
  for (const auto& e : b.events) ab.events.push_back(e);
  CHECK(total_energy(ab, m) == total_energy(a, m) + total_energy(b, m));
  // permuting non-PR events inside a timestamp cannot matter: energy only
  // looks at PR rows
  SimulationTrace with_noise = a;
  with_noise.events.insert(with_noise.events.begin(),
                           {0, 1, EventKind::kAssign, 0});
  CHECK(total_energy(with_noise, m) == total_energy(a, m));
}

TEST_CASE("bitstream-size scaling preserves the mean") {
  Scenario sc = reference_scenario(36, 36);
  sc.kb_scaling = true;
  EnergyModel m = EnergyModel::from_scenario(sc);
  // 1180 + 1340 + 837 = 3357; per-slot = 1.25 * kb * 3 / 3357
  CHECK(m.per_slot_mj[0] == Rational(5, 4) * Rational(1180 * 3, 3357));
  Rational mean = (m.per_slot_mj[0] + m.per_slot_mj[1] + m.per_slot_mj[2]) /
                  Rational(3);
  CHECK(mean == Rational(5, 4));
}

TEST_CASE("engine energy total equals the trace recomputation") {
  Scenario sc = reference_scenario(36, 1800);
  for (const char* p : {"themis", "stfs"}) {
    SimulationTrace t = run_simulation(sc, p);
    CHECK(total_energy(t, EnergyModel::from_scenario(sc)) ==
          t.final_snapshot().energy_mj);
  }
}

TEST_CASE("sweep rows are ordered and match direct runs") {
  Scenario sc = reference_scenario(36, 1440);
  auto rows = tradeoff_sweep(sc, "themis", {72, 36}, /*parallel=*/false);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].interval == 36);
  CHECK(rows[1].interval == 72);

  Scenario direct = sc;
  direct.interval_length = 36;
  SimulationTrace t = run_simulation(direct, "themis");
  CHECK(rows[0].sod == t.final_snapshot().sod);
  CHECK(rows[0].pr_count == t.final_snapshot().pr_count);
  CHECK(rows[0].energy_mj == t.final_snapshot().energy_mj);

  CHECK_THROWS_AS(tradeoff_sweep(sc, "themis", {}), ConfigError);
}

TEST_CASE("parallel sweep equals the serial reference") {
  Scenario sc = reference_scenario(36, 2880);
  std::vector<TimeUnit> grid{1, 2, 4, 8, 16, 32, 64};
  auto serial = tradeoff_sweep(sc, "themis", grid, false);
  auto parallel = tradeoff_sweep(sc, "themis", grid, true);
  CHECK(sweep_to_csv(serial) == sweep_to_csv(parallel));
}

TEST_CASE("themis energy never increases with the interval length") {
  Scenario sc = reference_scenario(36, 4320);
  auto rows = tradeoff_sweep(sc, "themis", {1, 2, 4, 8, 16, 32, 64});
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].energy_mj <= rows[i - 1].energy_mj);
  // trade-off directionality: the shortest interval is the fairest and the
  // most expensive end of the sweep
  CHECK(rows.front().energy_mj > rows.back().energy_mj);
  CHECK(rows.front().sod < rows.back().sod);
}

TEST_CASE("singleton sweep equals a direct run") {
  Scenario sc = reference_scenario(36, 1440);
  auto rows = tradeoff_sweep(sc, "themis", {36});
  REQUIRE(rows.size() == 1);
  SimulationTrace t = run_simulation(sc, "themis");
  CHECK(rows[0].sod == t.final_snapshot().sod);
  CHECK(rows[0].energy_mj == t.final_snapshot().energy_mj);
}
