#include "classical.hpp"

#include <algorithm>

namespace augcache {

std::optional<TagId> LruPolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                     bool is_full) {
  std::optional<TagId> victim;
  if (!cache.contains(tag) && is_full) {
    TagId oldest = cache.items()[0];
    for (TagId x : cache.items()) {
      if (last_touch_[x] < last_touch_[oldest]) oldest = x;
    }
    victim = oldest;
  }
  last_touch_[tag] = t + 1;
  return victim;
}

std::optional<TagId> RandomPolicy::step(std::size_t /*t*/, TagId tag, const CacheSet& cache,
                                        bool is_full) {
  if (cache.contains(tag) || !is_full) return std::nullopt;
  return cache.items()[rng_.uniform_below(cache.size())];
}

std::vector<TagId> unmarked_cached(const CacheSet& cache, const std::vector<char>& marked) {
  std::vector<TagId> out;
  out.reserve(cache.size());
  for (TagId x : cache.items()) {
    if (!marked[x]) out.push_back(x);
  }
  return out;
}

std::optional<TagId> MarkerPolicy::step(std::size_t /*t*/, TagId tag, const CacheSet& cache,
                                        bool is_full) {
  if (cache.contains(tag) || !is_full) {
    marked_[tag] = true;  // hits and cold loads are marked without eviction
    return std::nullopt;
  }
  auto unmarked = unmarked_cached(cache, marked_);
  if (unmarked.empty()) {
    ++phase_;
    std::fill(marked_.begin(), marked_.end(), false);
    unmarked.assign(cache.items().begin(), cache.items().end());
  }
  const TagId victim = unmarked[rng_.uniform_below(unmarked.size())];
  marked_[tag] = true;
  return victim;
}

std::unique_ptr<Policy> make_lru(std::size_t alphabet) {
  return std::make_unique<LruPolicy>(alphabet);
}

std::unique_ptr<Policy> make_random(std::size_t /*alphabet*/, std::uint64_t seed) {
  return std::make_unique<RandomPolicy>(seed);
}

std::unique_ptr<Policy> make_marker(std::size_t alphabet, std::uint64_t seed) {
  return std::make_unique<MarkerPolicy>(alphabet, seed);
}

}  // namespace augcache
