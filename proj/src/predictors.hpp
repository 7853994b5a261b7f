#ifndef AUGCACHE_PREDICTORS_HPP
#define AUGCACHE_PREDICTORS_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "oracle.hpp"
#include "sim.hpp"
#include "trace.hpp"

namespace augcache {

// Reuse-distance predictor: one prediction per request, for the requested
// item. Predictions are precomputed against the bound trace, so predict() is
// pure and instances can be shared between consumers. A predicted index of at
// least the trace length means "never again"; adversarial predictions use
// values beyond the trace length to encode a reversed ordering, so consumers
// compare raw values.
class ReusePredictor {
public:
  virtual ~ReusePredictor() = default;
  virtual std::size_t predict(std::size_t t, TagId tag) const = 0;
  virtual std::string_view name() const = 0;
};

// Optimal-policy predictor: a complete eviction algorithm simulated on its
// own cache over the bound trace. predict_victim() replays that run; asked
// about a cache that diverged from its own, it falls back to the
// furthest-in-future rule against the supplied contents.
class PolicyPredictor {
public:
  virtual ~PolicyPredictor() = default;
  virtual TagId predict_victim(std::size_t t, TagId tag, const CacheSet& cache) const = 0;
  // Own cache contents after each request (sorted by id), length L.
  virtual std::span<const std::vector<TagId>> simulated_states() const = 0;
  virtual std::string_view name() const = 0;
};

std::shared_ptr<const ReusePredictor> make_perfect_reuse(const NextUseTable& next_use);

// Multiplies each true reuse distance by exp(sigma * N(0,1)); sigma = 0
// degenerates to the perfect predictor, never-again predictions stay put.
std::shared_ptr<const ReusePredictor> make_noisy_reuse(const NextUseTable& next_use, double sigma,
                                                       std::uint64_t seed);

// Order-reversing worst case: the sooner an item truly returns, the further
// away it is predicted; never-returning items are predicted imminent.
std::shared_ptr<const ReusePredictor> make_adversarial_reuse(const NextUseTable& next_use);

std::shared_ptr<const PolicyPredictor> make_perfect_policy(const Trace& trace,
                                                           const OptProfile& opt);

// Runs its own cache; on each of its misses it follows the
// furthest-in-future rule with probability fidelity, otherwise evicts a
// uniformly random cached item. fidelity = 1 reproduces the optimal run.
std::shared_ptr<const PolicyPredictor> make_noisy_policy(const Trace& trace, CacheConfig config,
                                                         double fidelity, std::uint64_t seed);

// Running totals of the two prediction-error measures.
struct ErrorAccumulator {
  std::uint64_t eta_reuse = 0;  // request-count units
  std::uint64_t eta_cache = 0;  // item-count units

  void add_reuse(std::size_t truth, std::size_t predicted) {
    eta_reuse += truth > predicted ? truth - predicted : predicted - truth;
  }
  void add_cache(std::span<const TagId> a, std::span<const TagId> b);
};

// Sum of |predicted - true| over aligned index arrays.
std::uint64_t eta_reuse_raw(std::span<const std::size_t> truth,
                            std::span<const std::size_t> predicted);

// Total L1 reuse-distance error of a predictor over a trace; "never again"
// is valued as the trace length on both sides.
std::uint64_t eta_reuse(const Trace& trace, const ReusePredictor& predictor,
                        const NextUseTable& next_use);

// Summed symmetric-difference size between two equally long sequences of
// sorted cache contents.
std::uint64_t eta_cache(std::span<const std::vector<TagId>> predictor_states,
                        std::span<const std::vector<TagId>> opt_states);

}  // namespace augcache

#endif
