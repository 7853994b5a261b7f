#include "combiner.hpp"

#include <algorithm>

#include "error.hpp"

namespace augcache {

bool WeightFollower::observe(bool followed_missed, bool other_missed, std::size_t followed_total,
                             std::size_t other_total) {
  const double p_prev =
      follow_probability(followed_total - (followed_missed ? 1 : 0),
                         other_total - (other_missed ? 1 : 0));
  const double p_new = follow_probability(followed_total, other_total);
  if (!(p_new < p_prev)) {
    last_switch_prob_ = 0.0;
    return false;
  }
  last_switch_prob_ = (p_prev - p_new) / p_prev;
  return rng_.bernoulli(last_switch_prob_);
}

CombinedPolicy::CombinedPolicy(std::string label, std::unique_ptr<Policy> side_a,
                               std::unique_ptr<Policy> side_b, std::unique_ptr<Follower> follower,
                               const Trace& trace, CacheConfig config)
    : label_(std::move(label)), policy_a_(std::move(side_a)), policy_b_(std::move(side_b)),
      follower_(std::move(follower)), lex_(trace.lex_ranks()),
      cache_a_(config.k, trace.alphabet_size()), cache_b_(config.k, trace.alphabet_size()) {}

std::optional<TagId> CombinedPolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                          bool is_full) {
  const bool miss_a = advance_step(*policy_a_, cache_a_, t, tag).miss;
  const Decision decision_b = advance_step(*policy_b_, cache_b_, t, tag);
  misses_a_ += miss_a ? 1 : 0;
  misses_b_ += decision_b.miss ? 1 : 0;
  const bool miss_b = decision_b.miss;

  const bool followed_missed = followed_ == A ? miss_a : miss_b;
  const bool other_missed = followed_ == A ? miss_b : miss_a;
  const std::size_t followed_total = followed_ == A ? misses_a_ : misses_b_;
  const std::size_t other_total = followed_ == A ? misses_b_ : misses_a_;
  if (follower_->observe(followed_missed, other_missed, followed_total, other_total)) {
    followed_ = followed_ == A ? B : A;
    ++switches_;
    if (sync_pending_) sync_done_.push_back(open_sync_);
    sync_pending_ = true;
    open_sync_ = SyncRecord{t, 0, 0, false};
  }
  const bool now_followed_missed = followed_ == A ? miss_a : miss_b;
  follow_log_.push_back(static_cast<std::uint8_t>(followed_));
  if (keep_step_log_) {
    step_log_.push_back(StepLog{followed_, static_cast<std::uint32_t>(misses_a_),
                                static_cast<std::uint32_t>(misses_b_)});
  }

  const CacheSet& target = followed_cache();

  if (cache.contains(tag) || !is_full) {
    // Physical contents after this step: unchanged on a hit, plus the loaded
    // tag otherwise.
    if (sync_pending_) {
      bool equal = cache.size() + (cache.contains(tag) ? 0 : 1) == target.size();
      if (equal && !cache.contains(tag)) equal = target.contains(tag);
      if (equal) {
        for (TagId x : cache.items()) {
          if (!target.contains(x)) {
            equal = false;
            break;
          }
        }
      }
      if (equal) {
        open_sync_.converged = true;
        sync_done_.push_back(open_sync_);
        sync_pending_ = false;
      }
    }
    return std::nullopt;
  }

  // Lazy sync: drop a stale item if the physical cache holds any; when the
  // caches already agree the single stale item is exactly the followed
  // side's victim for this step.
  std::optional<TagId> victim;
  for (TagId x : cache.items()) {
    if (target.contains(x)) continue;
    if (!victim || lex_[x] < lex_[*victim]) victim = x;
  }
  if (!victim) {
    throw ConsistencyError("combiner '" + label_ + "' found no stale item to evict at request " +
                           std::to_string(t));
  }

  if (sync_pending_) {
    ++open_sync_.phys_misses;
    if (!now_followed_missed) ++open_sync_.sync_misses;
    // Equality after this step's eviction and load: the physical cache will
    // hold cache - victim + tag.
    bool equal = cache.size() == target.size();
    if (equal) {
      for (TagId x : cache.items()) {
        if (x == *victim) continue;
        if (!target.contains(x)) {
          equal = false;
          break;
        }
      }
      equal = equal && target.contains(tag);
    }
    if (equal) {
      open_sync_.converged = true;
      sync_done_.push_back(open_sync_);
      sync_pending_ = false;
    }
  }
  return victim;
}

std::vector<CombinedPolicy::SyncRecord> CombinedPolicy::sync_records() const {
  std::vector<SyncRecord> out = sync_done_;
  if (sync_pending_) out.push_back(open_sync_);
  return out;
}

const std::vector<std::uint8_t>& follow_log(const CombinedPolicy& combined) {
  return combined.follow_log();
}

std::unique_ptr<CombinedPolicy> combine_deterministic(std::unique_ptr<Policy> side_a,
                                                      std::unique_ptr<Policy> side_b, double gamma,
                                                      const Trace& trace, CacheConfig config) {
  if (!(gamma > 1.0)) throw ConfigError("switching factor must be > 1");
  std::string label = std::string(side_a->name()) + "+det/" + std::string(side_b->name());
  return std::make_unique<CombinedPolicy>(std::move(label), std::move(side_a), std::move(side_b),
                                          std::make_unique<ThresholdFollower>(gamma), trace,
                                          config);
}

std::unique_ptr<CombinedPolicy> combine_randomized(std::unique_ptr<Policy> side_a,
                                                   std::unique_ptr<Policy> side_b, double epsilon,
                                                   std::uint64_t seed, const Trace& trace,
                                                   CacheConfig config) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  std::string label = std::string(side_a->name()) + "+rand/" + std::string(side_b->name());
  return std::make_unique<CombinedPolicy>(std::move(label), std::move(side_a), std::move(side_b),
                                          std::make_unique<WeightFollower>(epsilon, seed), trace,
                                          config);
}

}  // namespace augcache
