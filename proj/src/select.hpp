#ifndef AUGCACHE_SELECT_HPP
#define AUGCACHE_SELECT_HPP

#include <span>

#include "error.hpp"
#include "trace.hpp"

namespace augcache {

// Candidate with the largest key; ties go to the lexicographically smallest
// tag so that independently implemented policies agree on victims exactly.
template <class KeyFn>
TagId select_latest(std::span<const TagId> candidates, std::span<const std::uint32_t> lex_rank,
                    KeyFn&& key) {
  if (candidates.empty()) throw ConsistencyError("victim selection over an empty candidate set");
  TagId best = candidates[0];
  auto best_key = key(best);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const TagId cand = candidates[i];
    const auto k = key(cand);
    if (k > best_key || (k == best_key && lex_rank[cand] < lex_rank[best])) {
      best = cand;
      best_key = k;
    }
  }
  return best;
}

}  // namespace augcache

#endif
