#include "augmented.hpp"

#include "error.hpp"
#include "select.hpp"

namespace augcache {

double harmonic(std::size_t k) {
  double h = 0.0;
  for (std::size_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

PredictiveMarkerPolicy::PredictiveMarkerPolicy(const Trace& trace, CacheConfig config,
                                               std::shared_ptr<const ReusePredictor> predictor,
                                               std::uint64_t seed)
    : predictor_(std::move(predictor)), lex_(trace.lex_ranks()), rng_(seed),
      trust_limit_(harmonic(config.k)), marked_(trace.alphabet_size(), false),
      pred_next_(trace.alphabet_size(), 0), ledger_(trace.alphabet_size()) {}

std::optional<TagId> PredictiveMarkerPolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                                  bool is_full) {
  pred_next_[tag] = predictor_->predict(t, tag);
  if (cache.contains(tag) || !is_full) {
    marked_[tag] = true;
    return std::nullopt;
  }
  auto unmarked = unmarked_cached(cache, marked_);
  if (unmarked.empty()) {
    ++phase_;
    std::fill(marked_.begin(), marked_.end(), false);
    ledger_.reset();  // chains are phase-scoped
    unmarked.assign(cache.items().begin(), cache.items().end());
  }
  const auto blame = ledger_.blame(tag);
  const TagId victim =
      static_cast<double>(blame.length) <= trust_limit_
          ? select_latest(std::span<const TagId>(unmarked), lex_,
                          [&](TagId x) { return pred_next_[x]; })
          : unmarked[rng_.uniform_below(unmarked.size())];
  ledger_.record_victim(victim, blame.chain);
  marked_[tag] = true;
  return victim;
}

LMarkerPolicy::LMarkerPolicy(const Trace& trace, std::shared_ptr<const ReusePredictor> predictor,
                             std::uint64_t seed)
    : predictor_(std::move(predictor)), lex_(trace.lex_ranks()), rng_(seed),
      marked_(trace.alphabet_size(), false), pred_next_(trace.alphabet_size(), 0),
      ledger_(trace.alphabet_size()) {}

std::optional<TagId> LMarkerPolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                         bool is_full) {
  pred_next_[tag] = predictor_->predict(t, tag);
  if (cache.contains(tag) || !is_full) {
    marked_[tag] = true;
    return std::nullopt;
  }
  auto unmarked = unmarked_cached(cache, marked_);
  if (unmarked.empty()) {
    std::fill(marked_.begin(), marked_.end(), false);
    ledger_.reset();
    unmarked.assign(cache.items().begin(), cache.items().end());
  }
  const auto blame = ledger_.blame(tag);
  const TagId victim = blame.length == 1
                           ? select_latest(std::span<const TagId>(unmarked), lex_,
                                           [&](TagId x) { return pred_next_[x]; })
                           : unmarked[rng_.uniform_below(unmarked.size())];
  ledger_.record_victim(victim, blame.chain);
  marked_[tag] = true;
  return victim;
}

LNonMarkerPolicy::LNonMarkerPolicy(const Trace& trace,
                                   std::shared_ptr<const ReusePredictor> predictor,
                                   std::uint64_t seed)
    : predictor_(std::move(predictor)), lex_(trace.lex_ranks()), rng_(seed),
      pred_next_(trace.alphabet_size(), 0), ledger_(trace.alphabet_size()) {}

std::optional<TagId> LNonMarkerPolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                            bool is_full) {
  pred_next_[tag] = predictor_->predict(t, tag);
  if (cache.contains(tag) || !is_full) return std::nullopt;
  const auto blame = ledger_.blame(tag);
  const bool follow = rng_.next_unit() < 1.0 / static_cast<double>(blame.length);
  const TagId victim = follow ? select_latest(cache.items(), lex_,
                                              [&](TagId x) { return pred_next_[x]; })
                              : cache.items()[rng_.uniform_below(cache.size())];
  ledger_.record_victim(victim, blame.chain);
  return victim;
}

BlindOraclePolicy::BlindOraclePolicy(const Trace& trace,
                                     std::shared_ptr<const ReusePredictor> predictor)
    : predictor_(std::move(predictor)), lex_(trace.lex_ranks()),
      pred_next_(trace.alphabet_size(), 0) {}

std::optional<TagId> BlindOraclePolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                             bool is_full) {
  pred_next_[tag] = predictor_->predict(t, tag);
  if (cache.contains(tag) || !is_full) return std::nullopt;
  return select_latest(cache.items(), lex_, [&](TagId x) { return pred_next_[x]; });
}

std::optional<TagId> FtpPolicy::step(std::size_t t, TagId tag, const CacheSet& cache,
                                     bool is_full) {
  if (cache.contains(tag) || !is_full) return std::nullopt;
  return predictor_->predict_victim(t, tag, cache);
}

std::unique_ptr<Policy> make_predictive_marker(const Trace& trace, CacheConfig config,
                                               std::shared_ptr<const ReusePredictor> predictor,
                                               std::uint64_t seed) {
  return std::make_unique<PredictiveMarkerPolicy>(trace, config, std::move(predictor), seed);
}

std::unique_ptr<Policy> make_lmarker(const Trace& trace,
                                     std::shared_ptr<const ReusePredictor> predictor,
                                     std::uint64_t seed) {
  return std::make_unique<LMarkerPolicy>(trace, std::move(predictor), seed);
}

std::unique_ptr<Policy> make_lnonmarker(const Trace& trace,
                                        std::shared_ptr<const ReusePredictor> predictor,
                                        std::uint64_t seed) {
  return std::make_unique<LNonMarkerPolicy>(trace, std::move(predictor), seed);
}

std::unique_ptr<Policy> make_blind_oracle(const Trace& trace,
                                          std::shared_ptr<const ReusePredictor> predictor) {
  return std::make_unique<BlindOraclePolicy>(trace, std::move(predictor));
}

std::unique_ptr<Policy> make_ftp(std::shared_ptr<const PolicyPredictor> predictor) {
  return std::make_unique<FtpPolicy>(std::move(predictor));
}

}  // namespace augcache
