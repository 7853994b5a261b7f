#include "sim.hpp"

#include <algorithm>

#include "error.hpp"

namespace augcache {

void CacheSet::load(TagId tag) {
  if (contains(tag) || full()) {
    throw ConsistencyError("cache load precondition violated");
  }
  pos_[tag] = static_cast<std::uint32_t>(items_.size());
  items_.push_back(tag);
}

void CacheSet::evict(TagId tag) {
  const std::uint32_t at = pos_[tag];
  if (at == npos) throw ConsistencyError("evicting a tag that is not cached");
  const TagId last = items_.back();
  items_[at] = last;
  pos_[last] = at;
  items_.pop_back();
  pos_[tag] = npos;
}

std::vector<TagId> CacheSet::sorted_items() const {
  std::vector<TagId> out(items_.begin(), items_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool CacheSet::same_contents(const CacheSet& other) const {
  if (items_.size() != other.items_.size()) return false;
  for (TagId tag : items_) {
    if (!other.contains(tag)) return false;
  }
  return true;
}

namespace {

[[noreturn]] void contract_violation(const Policy& policy, std::size_t t, const char* what) {
  throw ConsistencyError("policy '" + std::string(policy.name()) + "' broke its step contract at request " +
                         std::to_string(t) + ": " + what);
}

}  // namespace

Decision advance_step(Policy& policy, CacheSet& cache, std::size_t t, TagId tag) {
  const bool hit = cache.contains(tag);
  const bool full = cache.full();
  const auto victim = policy.step(t, tag, cache, full);
  if (hit) {
    if (victim) contract_violation(policy, t, "returned a victim on a hit");
    return Decision{false, std::nullopt};
  }
  if (!full) {
    if (victim) contract_violation(policy, t, "returned a victim while the cache had room");
    cache.load(tag);
    return Decision{true, std::nullopt};
  }
  if (!victim) contract_violation(policy, t, "returned no victim although eviction was required");
  if (!cache.contains(*victim)) contract_violation(policy, t, "returned a victim that is not cached");
  cache.evict(*victim);
  cache.load(tag);
  return Decision{true, victim};
}

SimulationResult simulate(Policy& policy, const Trace& trace, CacheConfig config,
                          bool record_states) {
  if (config.k < 1) throw ConfigError("cache size must be >= 1");
  CacheSet cache(config.k, trace.alphabet_size());
  SimulationResult result;
  result.decisions.reserve(trace.size());
  if (record_states) result.cache_states.reserve(trace.size());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    Decision d = advance_step(policy, cache, t, trace.at(t));
    result.misses += d.miss ? 1 : 0;
    result.decisions.push_back(d);
    if (record_states) result.cache_states.push_back(cache.sorted_items());
  }
  return result;
}

}  // namespace augcache
