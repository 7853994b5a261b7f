#ifndef AUGCACHE_ORACLE_HPP
#define AUGCACHE_ORACLE_HPP

#include <memory>
#include <optional>

#include "sim.hpp"
#include "trace.hpp"

namespace augcache {

// Offline-optimal run: the furthest-in-future eviction rule, with ties broken
// by lexicographically smallest tag so reruns and equivalence checks are exact.
struct OptProfile {
  SimulationResult result;
  // Eviction at each step, if any; aligned with result.decisions.
  std::vector<std::optional<TagId>> victims;
  std::size_t opt_cost = 0;
};

OptProfile belady(const Trace& trace, CacheConfig config, const NextUseTable& next_use,
                  bool record_states = true);

// The per-step cache contents of the optimal run. Requires the profile to
// have been produced with state recording.
const std::vector<std::vector<TagId>>& opt_cache_states(const OptProfile& profile);

// Exhaustive minimum miss count, used as an independent check on belady().
// Refuses instances beyond length 14 or 7 distinct tags.
std::size_t brute_force_opt(const Trace& trace, CacheConfig config);

// The furthest-in-future rule as a plain Policy (usable under combiners and
// in the benchmark matrix as `opt`).
std::unique_ptr<Policy> make_belady_policy(const Trace& trace, const NextUseTable& next_use);

}  // namespace augcache

#endif
