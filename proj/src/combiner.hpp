#ifndef AUGCACHE_COMBINER_HPP
#define AUGCACHE_COMBINER_HPP

#include <memory>

#include "rng.hpp"
#include "sim.hpp"

namespace augcache {

// Decides, once per request, whether the combiner should flip away from the
// side it currently follows. Fed this step's virtual miss flags and the
// cumulative virtual miss counts after the step.
class Follower {
public:
  virtual ~Follower() = default;
  virtual bool observe(bool followed_missed, bool other_missed, std::size_t followed_total,
                       std::size_t other_total) = 0;
};

// Flip when the followed side's cumulative misses exceed gamma times the
// other side's.
class ThresholdFollower final : public Follower {
public:
  explicit ThresholdFollower(double gamma) : gamma_(gamma) {}
  bool observe(bool, bool, std::size_t followed_total, std::size_t other_total) override {
    return static_cast<double>(followed_total) > gamma_ * static_cast<double>(other_total);
  }

private:
  double gamma_;
};

// Multiplicative weights w_i = (1-eps)^misses_i, coupled to the followed side
// with minimal switching: when the followed side's share p drops across a
// step, flip away with probability (p_prev - p_new) / p_prev.
class WeightFollower final : public Follower {
public:
  WeightFollower(double epsilon, std::uint64_t seed) : epsilon_(epsilon), rng_(seed) {}
  bool observe(bool followed_missed, bool other_missed, std::size_t followed_total,
               std::size_t other_total) override;

  // Share of the followed side's weight given the two cumulative miss counts.
  double follow_probability(std::size_t followed_total, std::size_t other_total) const {
    const double gap = static_cast<double>(other_total) - static_cast<double>(followed_total);
    return 1.0 / (1.0 + std::pow(1.0 - epsilon_, gap));
  }

  double last_switch_probability() const { return last_switch_prob_; }

private:
  double epsilon_;
  Rng rng_;
  double last_switch_prob_ = 0.0;
};

// Runs two policies on virtual caches, follows one of them (starting with A),
// and keeps the physical cache in sync lazily: on a physical miss it first
// evicts items the followed virtual cache no longer holds (smallest tag
// first), which also reproduces the followed side's eviction once the caches
// agree.
class CombinedPolicy final : public Policy {
public:
  enum Side : std::uint8_t { A = 0, B = 1 };

  struct StepLog {
    Side followed;  // side governing this step's physical decision
    std::uint32_t misses_a;
    std::uint32_t misses_b;
  };

  // Convergence window opened by a switch: counts physical misses until the
  // physical cache first matched the followed virtual cache. `sync_misses`
  // counts only the misses charged to the switch itself (the followed side
  // hit while the physical cache missed); `phys_misses` counts them all.
  // converged == false means the segment ended (next switch or end of input)
  // first.
  struct SyncRecord {
    std::size_t switch_step;
    std::size_t phys_misses;
    std::size_t sync_misses;
    bool converged;
  };

  CombinedPolicy(std::string label, std::unique_ptr<Policy> side_a, std::unique_ptr<Policy> side_b,
                 std::unique_ptr<Follower> follower, const Trace& trace, CacheConfig config);

  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return label_; }

  Side followed() const { return followed_; }
  std::size_t switches() const { return switches_; }
  std::size_t virtual_misses(Side side) const { return side == A ? misses_a_ : misses_b_; }
  const std::vector<std::uint8_t>& follow_log() const { return follow_log_; }

  void enable_step_log() { keep_step_log_ = true; }
  const std::vector<StepLog>& step_log() const { return step_log_; }

  // Finished sync windows plus the one still open, if any.
  std::vector<SyncRecord> sync_records() const;

private:
  const CacheSet& followed_cache() const { return followed_ == A ? cache_a_ : cache_b_; }

  std::string label_;
  std::unique_ptr<Policy> policy_a_;
  std::unique_ptr<Policy> policy_b_;
  std::unique_ptr<Follower> follower_;
  std::span<const std::uint32_t> lex_;
  CacheSet cache_a_;
  CacheSet cache_b_;
  std::size_t misses_a_ = 0;
  std::size_t misses_b_ = 0;
  Side followed_ = A;
  std::size_t switches_ = 0;
  std::vector<std::uint8_t> follow_log_;
  bool keep_step_log_ = false;
  std::vector<StepLog> step_log_;
  bool sync_pending_ = false;
  SyncRecord open_sync_{};
  std::vector<SyncRecord> sync_done_;
};

// Per-step followed-side series of a finished run (0 = side A, 1 = side B).
const std::vector<std::uint8_t>& follow_log(const CombinedPolicy& combined);

std::unique_ptr<CombinedPolicy> combine_deterministic(std::unique_ptr<Policy> side_a,
                                                      std::unique_ptr<Policy> side_b, double gamma,
                                                      const Trace& trace, CacheConfig config);

std::unique_ptr<CombinedPolicy> combine_randomized(std::unique_ptr<Policy> side_a,
                                                   std::unique_ptr<Policy> side_b, double epsilon,
                                                   std::uint64_t seed, const Trace& trace,
                                                   CacheConfig config);

}  // namespace augcache

#endif
