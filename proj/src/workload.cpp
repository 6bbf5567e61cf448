#include "themis/workload.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace themis {

std::pair<std::uint64_t, std::uint64_t> splitmix_next(std::uint64_t state) {
  std::uint64_t s = state + 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z = z ^ (z >> 31);
  return {z, s};
}

std::uint32_t Scenario::max_tenant_area() const {
  std::uint32_t m = 0;
  for (const auto& t : tenants) m = std::max(m, t.area);
  return m;
}

std::uint32_t Scenario::max_comp_time() const {
  std::uint32_t m = 0;
  for (const auto& t : tenants) m = std::max(m, t.comp_time);
  return m;
}

std::uint64_t Scenario::total_pr_area() const {
  std::uint64_t sum = 0;
  for (const auto& s : slots) sum += s.capacity;
  return sum;
}

void Scenario::validate() const {
  if (tenants.empty()) throw ConfigError("scenario: no tenants");
  if (slots.empty()) throw ConfigError("scenario: no slots");
  if (interval_length < 1)
    throw ConfigError("scenario: interval_length must be >= 1");
  if (horizon < interval_length)
    throw ConfigError("scenario: horizon must be >= interval_length");
  std::uint32_t max_cap = 0;
  for (const auto& s : slots) max_cap = std::max(max_cap, s.capacity);
  for (const auto& t : tenants) {
    if (t.area > max_cap)
      throw ConfigError("scenario: tenant '" + t.name + "' (area " +
                        std::to_string(t.area) +
                        ") fits no slot; largest capacity is " +
                        std::to_string(max_cap));
  }
  if (demand.kind == DemandKind::kAlways) {
    // order must be a permutation of the tenant set
    if (demand.order.size() != tenants.size())
      throw ConfigError("demand.order: must list every tenant exactly once");
    std::vector<bool> seen(tenants.size(), false);
    for (TenantIdx t : demand.order) {
      if (t >= tenants.size() || seen[t])
        throw ConfigError("demand.order: must be a permutation of the tenant set");
      seen[t] = true;
    }
  } else {
    for (const Rational& p : {demand.p0, demand.p1, demand.p2})
      if (p < Rational(0) || p > Rational(1))
        throw ConfigError("demand: probabilities must lie in [0, 1]");
    if (demand.p0 + demand.p1 + demand.p2 != Rational(1))
      throw ConfigError("demand: p0 + p1 + p2 must equal 1 exactly");
  }
  for (const auto& s : slots) {
    if (s.capacity < 1) throw ConfigError("slots: capacity must be >= 1");
    if (!(s.energy_mj > Rational(0)))
      throw ConfigError("slots: energy_mj must be positive");
  }
}

std::vector<TenantProfile> builtin_benchmarks() {
  std::vector<TenantProfile> out;
  const std::pair<const char*, std::pair<std::uint32_t, std::uint32_t>> raw[] = {
      {"AES", {2, 7}},  {"FFT", {17, 5}},  {"SHA", {6, 8}},  {"BFS", {12, 15}},
      {"KMP", {3, 9}},  {"GEMM", {14, 28}}, {"SORT", {1, 14}}, {"SPMV", {5, 14}},
  };
  TenantIdx id = 0;
  for (const auto& [name, at] : raw)
    out.emplace_back(id++, name, at.first, at.second);
  return out;
}

Scenario reference_scenario(TimeUnit interval_length, TimeUnit horizon) {
  Scenario sc;
  sc.tenants = builtin_benchmarks();
  sc.slots = {{4, 1180, Rational(5, 4)},
              {10, 1340, Rational(5, 4)},
              {18, 837, Rational(5, 4)}};
  sc.interval_length = interval_length;
  sc.horizon = horizon;
  sc.demand.kind = DemandKind::kAlways;
  for (TenantIdx i = 0; i < sc.tenants.size(); ++i) sc.demand.order.push_back(i);
  sc.validate();
  return sc;
}

Scenario homogeneous_scenario(TimeUnit interval_length, TimeUnit horizon,
                              std::uint64_t seed) {
  Scenario sc;
  sc.tenants = builtin_benchmarks();
  sc.slots = {{17, 1180, Rational(5, 4)}, {17, 1340, Rational(5, 4)}};
  sc.interval_length = interval_length;
  sc.horizon = horizon;
  sc.demand.kind = DemandKind::kRandom;
  sc.demand.seed = seed;
  sc.validate();
  return sc;
}

namespace {

// Draws k in {0,1,2} with probabilities (p0,p1,p2) from one 64-bit sample.
// Thresholds are exact: u < p0*2^64 -> 0, u < (p0+p1)*2^64 -> 1, else 2.
int draw_request_count(std::uint64_t u, const DemandModel& m) {
  auto threshold = [](const Rational& p) -> unsigned __int128 {
    unsigned __int128 full = (unsigned __int128)1 << 64;
    return full * (unsigned __int128)p.num() / (unsigned __int128)p.den();
  };
  unsigned __int128 uu = u;
  if (uu < threshold(m.p0)) return 0;
  if (uu < threshold(m.p0 + m.p1)) return 1;
  return 2;
}

}  // namespace

std::pair<std::vector<Request>, std::uint64_t> generate_demands(
    const DemandModel& model, const std::vector<TenantProfile>& tenants,
    std::uint64_t interval_index, std::uint64_t rng_state) {
  std::vector<Request> out;
  if (model.kind == DemandKind::kAlways) {
    out.reserve(model.order.size());
    for (TenantIdx t : model.order) out.push_back({t, interval_index});
    return {std::move(out), rng_state};
  }
  Rational psum = model.p0 + model.p1 + model.p2;
  if (psum != Rational(1))
    throw ConfigError("demand: p0 + p1 + p2 must equal 1 exactly");
  // Fisher-Yates visitation shuffle, then one count draw per tenant.
  std::vector<TenantIdx> visit(tenants.size());
  for (TenantIdx i = 0; i < visit.size(); ++i) visit[i] = i;
  std::uint64_t state = rng_state;
  for (std::size_t i = visit.size(); i > 1; --i) {
    auto [v, s] = splitmix_next(state);
    state = s;
    std::swap(visit[i - 1], visit[v % i]);
  }
  for (TenantIdx t : visit) {
    auto [v, s] = splitmix_next(state);
    state = s;
    int k = draw_request_count(v, model);
    for (int j = 0; j < k; ++j) out.push_back({t, interval_index});
  }
  return {std::move(out), state};
}

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) {
    // Decimal literals are taken at face value: scale by 10^k exactly.
    double d = v.get<double>();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10f", d);
    std::string s = buf;
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  throw ConfigError("config key '" + key + "': expected a number");
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ConfigError("unknown config key '" + where + it.key() + "'");
  }
}

}  // namespace

Scenario load_scenario_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown_keys(root, "",
                      {"tenants", "slots", "interval_length", "horizon",
                       "demand", "pr_latency", "kb_scaling"});
  Scenario sc;
  if (!root.contains("tenants") || !root["tenants"].is_array())
    throw ConfigError("config key 'tenants': required array missing");
  TenantIdx id = 0;
  for (const auto& t : root["tenants"]) {
    reject_unknown_keys(t, "tenants.", {"name", "area", "comp_time"});
    if (!t.contains("name") || !t.contains("area") || !t.contains("comp_time"))
      throw ConfigError("config key 'tenants': entries need name, area, comp_time");
    sc.tenants.emplace_back(id++, t["name"].get<std::string>(),
                            t["area"].get<std::uint32_t>(),
                            t["comp_time"].get<std::uint32_t>());
  }
  if (!root.contains("slots") || !root["slots"].is_array())
    throw ConfigError("config key 'slots': required array missing");
  std::size_t slot_i = 0;
  for (const auto& s : root["slots"]) {
    reject_unknown_keys(s, "slots.", {"capacity", "bitstream_kb", "energy_mj"});
    SlotSpec spec;
    if (!s.contains("capacity"))
      throw ConfigError("config key 'slots.capacity': required");
    spec.capacity = s["capacity"].get<std::uint32_t>();
    if (s.contains("bitstream_kb"))
      spec.bitstream_kb = s["bitstream_kb"].get<std::uint32_t>();
    else if (root["slots"].size() == 3)
      spec.bitstream_kb = std::array<std::uint32_t, 3>{1180, 1340, 837}[slot_i];
    if (s.contains("energy_mj"))
      spec.energy_mj = rational_from_json(s["energy_mj"], "slots.energy_mj");
    sc.slots.push_back(spec);
    ++slot_i;
  }
  if (!root.contains("interval_length") || !root.contains("horizon"))
    throw ConfigError("config keys 'interval_length' and 'horizon' are required");
  sc.interval_length = root["interval_length"].get<std::uint64_t>();
  sc.horizon = root["horizon"].get<std::uint64_t>();
  if (root.contains("pr_latency"))
    sc.pr_latency = root["pr_latency"].get<std::uint64_t>();
  if (root.contains("kb_scaling")) sc.kb_scaling = root["kb_scaling"].get<bool>();

  if (!root.contains("demand"))
    throw ConfigError("config key 'demand': required object missing");
  const auto& d = root["demand"];
  reject_unknown_keys(d, "demand.", {"kind", "order", "seed", "p0", "p1", "p2"});
  std::string kind = d.value("kind", "always");
  if (kind == "always") {
    sc.demand.kind = DemandKind::kAlways;
    if (d.contains("order")) {
      for (const auto& nm : d["order"]) {
        std::string name = nm.get<std::string>();
        auto it = std::find_if(sc.tenants.begin(), sc.tenants.end(),
                               [&](const TenantProfile& t) { return t.name == name; });
        if (it == sc.tenants.end())
          throw ConfigError("config key 'demand.order': unknown tenant '" + name + "'");
        sc.demand.order.push_back(it->id);
      }
    } else {
      for (TenantIdx i = 0; i < sc.tenants.size(); ++i)
        sc.demand.order.push_back(i);
    }
  } else if (kind == "random") {
    sc.demand.kind = DemandKind::kRandom;
    sc.demand.seed = d.value("seed", std::uint64_t{0});
    if (d.contains("p0")) sc.demand.p0 = rational_from_json(d["p0"], "demand.p0");
    if (d.contains("p1")) sc.demand.p1 = rational_from_json(d["p1"], "demand.p1");
    if (d.contains("p2")) sc.demand.p2 = rational_from_json(d["p2"], "demand.p2");
  } else {
    throw ConfigError("config key 'demand.kind': must be 'always' or 'random'");
  }
  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario_json(ss.str());
}

std::string scenario_to_json(const Scenario& sc) {
  json root;
  for (const auto& t : sc.tenants)
    root["tenants"].push_back(
        {{"name", t.name}, {"area", t.area}, {"comp_time", t.comp_time}});
  for (const auto& s : sc.slots)
    root["slots"].push_back({{"capacity", s.capacity},
                             {"bitstream_kb", s.bitstream_kb},
                             {"energy_mj", s.energy_mj.to_double()}});
  root["interval_length"] = sc.interval_length;
  root["horizon"] = sc.horizon;
  if (sc.pr_latency != 0) root["pr_latency"] = sc.pr_latency;
  if (sc.kb_scaling) root["kb_scaling"] = true;
  json d;
  if (sc.demand.kind == DemandKind::kAlways) {
    d["kind"] = "always";
    for (TenantIdx t : sc.demand.order) d["order"].push_back(sc.tenants[t].name);
  } else {
    d["kind"] = "random";
    d["seed"] = sc.demand.seed;
    d["p0"] = sc.demand.p0.to_double();
    d["p1"] = sc.demand.p1.to_double();
    d["p2"] = sc.demand.p2.to_double();
  }
  root["demand"] = d;
  return root.dump(2);
}

std::uint64_t scenario_digest(const Scenario& sc) {
  std::string canon = scenario_to_json(sc);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace themis
