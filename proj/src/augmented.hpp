#ifndef AUGCACHE_AUGMENTED_HPP
#define AUGCACHE_AUGMENTED_HPP

#include <memory>

#include "classical.hpp"
#include "predictors.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace augcache {

// Blame bookkeeping for eviction chains: a miss for a previously evicted tag
// extends the chain that evicted it, any other miss opens a fresh chain, and
// every victim is recorded under the chain its eviction belongs to.
class ChainLedger {
public:
  explicit ChainLedger(std::size_t alphabet) : chain_of_(alphabet, kNone) {}

  struct Blame {
    std::uint32_t chain;
    std::size_t length;
  };

  Blame blame(TagId missed) {
    std::uint32_t chain = chain_of_[missed];
    if (chain == kNone) {
      chain = static_cast<std::uint32_t>(lengths_.size());
      lengths_.push_back(0);
    }
    return Blame{chain, ++lengths_[chain]};
  }

  void record_victim(TagId victim, std::uint32_t chain) { chain_of_[victim] = chain; }

  void reset() {
    std::fill(chain_of_.begin(), chain_of_.end(), kNone);
    lengths_.clear();
  }

  std::size_t chain_count() const { return lengths_.size(); }
  std::size_t length(std::uint32_t chain) const { return lengths_[chain]; }

private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> chain_of_;  // last eviction's chain per tag
  std::vector<std::size_t> lengths_;
};

// Exact harmonic number H_k.
double harmonic(std::size_t k);

// Marker machinery that trusts the latest-predicted-reuse eviction while the
// blamed chain is short (length <= H_k) and falls back to a random unmarked
// item afterwards.
class PredictiveMarkerPolicy final : public Policy {
public:
  PredictiveMarkerPolicy(const Trace& trace, CacheConfig config,
                         std::shared_ptr<const ReusePredictor> predictor, std::uint64_t seed);
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "predictive-marker"; }

  std::size_t phase() const { return phase_; }
  const ChainLedger& ledger() const { return ledger_; }

private:
  std::shared_ptr<const ReusePredictor> predictor_;
  std::span<const std::uint32_t> lex_;
  Rng rng_;
  double trust_limit_;
  std::vector<char> marked_;
  std::vector<std::size_t> pred_next_;
  ChainLedger ledger_;
  std::size_t phase_ = 0;
};

// Like PredictiveMarkerPolicy but predictions are trusted only on the
// chain-opening eviction; every later eviction in a chain is random.
class LMarkerPolicy final : public Policy {
public:
  LMarkerPolicy(const Trace& trace, std::shared_ptr<const ReusePredictor> predictor,
                std::uint64_t seed);
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "lmarker"; }

private:
  std::shared_ptr<const ReusePredictor> predictor_;
  std::span<const std::uint32_t> lex_;
  Rng rng_;
  std::vector<char> marked_;
  std::vector<std::size_t> pred_next_;
  ChainLedger ledger_;
};

// No marks or phases; chains are global and the prediction is followed with
// probability 1/length, otherwise a uniformly random cached item goes. Not
// robust on its own; meant to run under a combiner.
class LNonMarkerPolicy final : public Policy {
public:
  LNonMarkerPolicy(const Trace& trace, std::shared_ptr<const ReusePredictor> predictor,
                   std::uint64_t seed);
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "lnonmarker"; }

private:
  std::shared_ptr<const ReusePredictor> predictor_;
  std::span<const std::uint32_t> lex_;
  Rng rng_;
  std::vector<std::size_t> pred_next_;
  ChainLedger ledger_;
};

// Applies the furthest-in-future rule to the predictions as-is.
class BlindOraclePolicy final : public Policy {
public:
  BlindOraclePolicy(const Trace& trace, std::shared_ptr<const ReusePredictor> predictor);
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "blind-oracle"; }

private:
  std::shared_ptr<const ReusePredictor> predictor_;
  std::span<const std::uint32_t> lex_;
  std::vector<std::size_t> pred_next_;
};

// Evicts whatever the policy predictor says; the consistent half of the
// combined follow-the-prediction algorithm.
class FtpPolicy final : public Policy {
public:
  explicit FtpPolicy(std::shared_ptr<const PolicyPredictor> predictor)
      : predictor_(std::move(predictor)) {}
  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override;
  std::string_view name() const override { return "ftp"; }

private:
  std::shared_ptr<const PolicyPredictor> predictor_;
};

std::unique_ptr<Policy> make_predictive_marker(const Trace& trace, CacheConfig config,
                                               std::shared_ptr<const ReusePredictor> predictor,
                                               std::uint64_t seed);
std::unique_ptr<Policy> make_lmarker(const Trace& trace,
                                     std::shared_ptr<const ReusePredictor> predictor,
                                     std::uint64_t seed);
std::unique_ptr<Policy> make_lnonmarker(const Trace& trace,
                                        std::shared_ptr<const ReusePredictor> predictor,
                                        std::uint64_t seed);
std::unique_ptr<Policy> make_blind_oracle(const Trace& trace,
                                          std::shared_ptr<const ReusePredictor> predictor);
std::unique_ptr<Policy> make_ftp(std::shared_ptr<const PolicyPredictor> predictor);

}  // namespace augcache

#endif
