#ifndef AUGCACHE_CLASSICAL_HPP
#define AUGCACHE_CLASSICAL_HPP

#include <cstdint>
#include <memory>

#include "rng.hpp"
#include "sim.hpp"

namespace augcache {

// Least-recently-used: recency refreshed on hits and loads.
class LruPolicy final : public Policy {
public:
  explicit LruPolicy(std::size_t alphabet) : last_touch_(alphabet, 0) {}
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "lru"; }

private:
  std::vector<std::size_t> last_touch_;  // 1 + last request index per tag
};

// Uniformly random victim.
class RandomPolicy final : public Policy {
public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "random"; }

private:
  Rng rng_;
};

// Marking algorithm: requested items are marked; when a miss finds every
// cached item marked, a new phase begins (all marks drop) and the victim is
// drawn uniformly from the unmarked items.
class MarkerPolicy final : public Policy {
public:
  MarkerPolicy(std::size_t alphabet, std::uint64_t seed)
      : rng_(seed), marked_(alphabet, false) {}
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "marker"; }

  std::size_t phase() const { return phase_; }
  bool is_marked(TagId tag) const { return marked_[tag]; }

private:
  Rng rng_;
  std::vector<char> marked_;
  std::size_t phase_ = 0;
};

std::unique_ptr<Policy> make_lru(std::size_t alphabet);
std::unique_ptr<Policy> make_random(std::size_t alphabet, std::uint64_t seed);
std::unique_ptr<Policy> make_marker(std::size_t alphabet, std::uint64_t seed);

// Collects the currently cached items that are unmarked.
std::vector<TagId> unmarked_cached(const CacheSet& cache, const std::vector<char>& marked);

}  // namespace augcache

#endif
