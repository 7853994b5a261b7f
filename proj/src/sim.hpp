#ifndef AUGCACHE_SIM_HPP
#define AUGCACHE_SIM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trace.hpp"

namespace augcache {

// Fixed-capacity item set with O(1) membership. Iteration order is the
// engine's load order and carries no meaning.
class CacheSet {
public:
  CacheSet(std::size_t capacity, std::size_t alphabet)
      : capacity_(capacity), pos_(alphabet, npos) {
    items_.reserve(capacity);
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return items_.size(); }
  bool full() const { return items_.size() == capacity_; }
  bool contains(TagId tag) const { return pos_[tag] != npos; }
  std::span<const TagId> items() const { return items_; }

  void load(TagId tag);
  void evict(TagId tag);

  std::vector<TagId> sorted_items() const;
  bool same_contents(const CacheSet& other) const;

private:
  static constexpr std::uint32_t npos = UINT32_MAX;
  std::size_t capacity_;
  std::vector<TagId> items_;
  std::vector<std::uint32_t> pos_;  // tag -> index into items_, npos if absent
};

// Eviction decision machine. The engine owns the cache and calls step() on
// every request; the policy returns a victim exactly when the request misses
// with a full cache. Instances are single-owner and deterministic given their
// seed and the request history.
class Policy {
public:
  virtual ~Policy() = default;
  virtual std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                                    bool is_full) = 0;
  virtual std::string_view name() const = 0;
};

struct Decision {
  bool miss = false;
  std::optional<TagId> victim;
};

struct SimulationResult {
  std::vector<Decision> decisions;
  std::size_t misses = 0;
  // Cache contents after each step, sorted by id; filled only when requested.
  std::vector<std::vector<TagId>> cache_states;
  // Optional per-step annotation (combiners record the side they followed).
  std::vector<std::uint8_t> aux;
};

// Applies one request to (policy, cache), enforcing the step contract.
// Throws ConsistencyError naming the policy and step on a violation.
Decision advance_step(Policy& policy, CacheSet& cache, std::size_t t, TagId tag);

SimulationResult simulate(Policy& policy, const Trace& trace, CacheConfig config,
                          bool record_states = false);

}  // namespace augcache

#endif
