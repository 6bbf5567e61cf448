#include "themis/baselines.hpp"
#include "themis/engine.hpp"
#include "themis/themis_policy.hpp"

namespace themis {

std::vector<std::string> policy_names() {
  return {"themis", "stfs", "prr", "rrr", "drr"};
}

std::unique_ptr<Policy> make_policy(const std::string& name,
                                    const Scenario& sc) {
  if (name == "themis") return std::make_unique<ThemisPolicy>(sc);
  if (name == "stfs") return std::make_unique<StfsPolicy>(sc);
  if (name == "prr") return std::make_unique<PrrPolicy>(sc);
  if (name == "rrr") return std::make_unique<RrrPolicy>(sc);
  if (name == "drr") return std::make_unique<DrrPolicy>(sc);
  std::string valid;
  for (const auto& n : policy_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown policy '" + name + "'; valid policies: " + valid);
}

}  // namespace themis
