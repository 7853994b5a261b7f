#include "oracle.hpp"

#include <map>

#include "error.hpp"
#include "select.hpp"

namespace augcache {

namespace {

// Forward Belady: every request refreshes the item's next-occurrence cursor
// from the precomputed table, so the furthest-in-future victim is an argmax
// over the cached items' cursors.
class BeladyPolicy final : public Policy {
public:
  BeladyPolicy(const Trace& trace, const NextUseTable& next_use)
      : next_use_(next_use), lex_(trace.lex_ranks()), next_occ_(trace.alphabet_size(), 0) {}

  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override {
    next_occ_[tag] = next_use_.next[t];
    if (cache.contains(tag) || !is_full) return std::nullopt;
    return select_latest(cache.items(), lex_, [&](TagId x) { return next_occ_[x]; });
  }

  std::string_view name() const override { return "opt"; }

private:
  const NextUseTable& next_use_;
  std::span<const std::uint32_t> lex_;
  std::vector<std::size_t> next_occ_;
};

}  // namespace

std::unique_ptr<Policy> make_belady_policy(const Trace& trace, const NextUseTable& next_use) {
  return std::make_unique<BeladyPolicy>(trace, next_use);
}

OptProfile belady(const Trace& trace, CacheConfig config, const NextUseTable& next_use,
                  bool record_states) {
  if (next_use.next.size() != trace.size()) {
    throw ConsistencyError("next-use table does not match the trace");
  }
  BeladyPolicy policy(trace, next_use);
  OptProfile profile;
  profile.result = simulate(policy, trace, config, record_states);
  profile.opt_cost = profile.result.misses;
  profile.victims.reserve(trace.size());
  for (const Decision& d : profile.result.decisions) profile.victims.push_back(d.victim);
  return profile;
}

const std::vector<std::vector<TagId>>& opt_cache_states(const OptProfile& profile) {
  if (profile.result.cache_states.size() != profile.result.decisions.size()) {
    throw ConsistencyError("opt profile was produced without state recording");
  }
  return profile.result.cache_states;
}

namespace {

// Key: (position, cache bitmask over tag ids). Distinct tags <= 7 keeps the
// mask in a byte.
using MemoKey = std::uint64_t;

std::size_t min_misses(const Trace& trace, std::size_t k, std::size_t t, std::uint32_t cache_mask,
                       std::map<MemoKey, std::size_t>& memo) {
  const std::size_t length = trace.size();
  if (t == length) return 0;
  const MemoKey key = (static_cast<MemoKey>(t) << 32) | cache_mask;
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const TagId tag = trace.at(t);
  const std::uint32_t bit = 1u << tag;
  std::size_t best;
  if (cache_mask & bit) {
    best = min_misses(trace, k, t + 1, cache_mask, memo);
  } else if (static_cast<std::size_t>(std::popcount(cache_mask)) < k) {
    best = 1 + min_misses(trace, k, t + 1, cache_mask | bit, memo);
  } else {
    best = SIZE_MAX;
    for (std::uint32_t m = cache_mask; m != 0; m &= m - 1) {
      const std::uint32_t victim_bit = m & -m;
      const std::size_t sub =
          min_misses(trace, k, t + 1, (cache_mask & ~victim_bit) | bit, memo);
      best = std::min(best, sub);
    }
    best += 1;
  }
  memo.emplace(key, best);
  return best;
}

}  // namespace

std::size_t brute_force_opt(const Trace& trace, CacheConfig config) {
  if (config.k < 1) throw ConfigError("cache size must be >= 1");
  if (trace.size() > 14 || trace.alphabet_size() > 7) {
    throw ConfigError("brute-force optimum limited to length <= 14 and <= 7 distinct tags");
  }
  std::map<MemoKey, std::size_t> memo;
  return min_misses(trace, config.k, 0, 0, memo);
}

}  // namespace augcache
