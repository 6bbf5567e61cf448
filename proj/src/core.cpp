#include "themis/core.hpp"

#include <algorithm>

namespace themis {

void TaskQueue::restore(std::vector<std::vector<Entry>> entries,
                        std::uint64_t next_seq) {
  per_tenant_ = std::move(entries);
  next_seq_ = next_seq;
  order_.clear();
  size_ = 0;
  // Rebuild the global LIFO index by merging the per-tenant stacks in
  // ascending sequence order.
  std::vector<std::pair<std::uint64_t, TenantIdx>> merged;
  for (TenantIdx t = 0; t < per_tenant_.size(); ++t) {
    for (const auto& e : per_tenant_[t]) merged.push_back({e.seq, t});
  }
  std::sort(merged.begin(), merged.end());
  order_ = std::move(merged);
  size_ = order_.size();
}

}  // namespace themis
