#include "predictors.hpp"

#include <cmath>

#include "error.hpp"
#include "rng.hpp"
#include "select.hpp"

namespace augcache {

namespace {

class TablePredictor : public ReusePredictor {
public:
  explicit TablePredictor(std::vector<std::size_t> preds) : preds_(std::move(preds)) {}
  std::size_t predict(std::size_t t, TagId /*tag*/) const override { return preds_[t]; }

protected:
  std::vector<std::size_t> preds_;
};

class PerfectReuse final : public TablePredictor {
public:
  using TablePredictor::TablePredictor;
  std::string_view name() const override { return "perfect-reuse"; }
};

class NoisyReuse final : public TablePredictor {
public:
  using TablePredictor::TablePredictor;
  std::string_view name() const override { return "noisy-reuse"; }
};

class AdversarialReuse final : public TablePredictor {
public:
  using TablePredictor::TablePredictor;
  std::string_view name() const override { return "adv-reuse"; }
};

}  // namespace

std::shared_ptr<const ReusePredictor> make_perfect_reuse(const NextUseTable& next_use) {
  return std::make_shared<PerfectReuse>(next_use.next);
}

std::shared_ptr<const ReusePredictor> make_noisy_reuse(const NextUseTable& next_use, double sigma,
                                                       std::uint64_t seed) {
  if (sigma < 0) throw ConfigError("noise scale must be >= 0");
  const std::size_t never = next_use.never;
  Rng rng(seed);
  std::vector<std::size_t> preds(next_use.next.size());
  for (std::size_t t = 0; t < preds.size(); ++t) {
    const std::size_t truth = next_use.next[t];
    if (truth >= never) {
      preds[t] = never;
      continue;
    }
    const double g = rng.normal();
    const double scaled = static_cast<double>(truth - t) * std::exp(sigma * g);
    if (!(scaled < static_cast<double>(never))) {
      preds[t] = never;
      continue;
    }
    const auto distance = std::max<long long>(1, std::llround(scaled));
    preds[t] = std::min(t + static_cast<std::size_t>(distance), never);
  }
  return std::make_shared<NoisyReuse>(std::move(preds));
}

std::shared_ptr<const ReusePredictor> make_adversarial_reuse(const NextUseTable& next_use) {
  const std::size_t never = next_use.never;
  std::vector<std::size_t> preds(next_use.next.size());
  for (std::size_t t = 0; t < preds.size(); ++t) {
    const std::size_t truth = next_use.next[t];
    preds[t] = truth >= never ? t + 1 : 2 * never - std::min(truth, 2 * never - t - 1);
  }
  return std::make_shared<AdversarialReuse>(std::move(preds));
}

namespace {

// Shared replay machinery: a recorded own run plus the offline rule as the
// off-script fallback.
class ReplayPolicyPredictor : public PolicyPredictor {
public:
  ReplayPolicyPredictor(const Trace& trace, std::vector<std::optional<TagId>> victims,
                        std::vector<std::vector<TagId>> states)
      : occ_(trace), lex_(trace.lex_ranks()), victims_(std::move(victims)),
        states_(std::move(states)) {}

  TagId predict_victim(std::size_t t, TagId /*tag*/, const CacheSet& cache) const override {
    if (t < victims_.size() && victims_[t] && cache.contains(*victims_[t])) {
      return *victims_[t];
    }
    return select_latest(cache.items(), lex_, [&](TagId x) { return occ_.next_after(x, t); });
  }

  std::span<const std::vector<TagId>> simulated_states() const override { return states_; }

private:
  OccurrenceIndex occ_;
  std::span<const std::uint32_t> lex_;
  std::vector<std::optional<TagId>> victims_;
  std::vector<std::vector<TagId>> states_;
};

class PerfectPolicy final : public ReplayPolicyPredictor {
public:
  using ReplayPolicyPredictor::ReplayPolicyPredictor;
  std::string_view name() const override { return "perfect-policy"; }
};

class NoisyPolicy final : public ReplayPolicyPredictor {
public:
  using ReplayPolicyPredictor::ReplayPolicyPredictor;
  std::string_view name() const override { return "noisy-policy"; }
};

// The internal algorithm behind make_noisy_policy's own run.
class NoisyOwnPolicy final : public Policy {
public:
  NoisyOwnPolicy(const Trace& trace, const OccurrenceIndex& occ, double fidelity,
                 std::uint64_t seed)
      : occ_(occ), lex_(trace.lex_ranks()), fidelity_(fidelity), rng_(seed) {}

  std::optional<TagId> step(std::size_t t, TagId tag, const CacheSet& cache,
                            bool is_full) override {
    if (cache.contains(tag) || !is_full) return std::nullopt;
    if (rng_.bernoulli(fidelity_)) {
      return select_latest(cache.items(), lex_, [&](TagId x) { return occ_.next_after(x, t); });
    }
    return cache.items()[rng_.uniform_below(cache.size())];
  }

  std::string_view name() const override { return "noisy-policy-core"; }

private:
  const OccurrenceIndex& occ_;
  std::span<const std::uint32_t> lex_;
  double fidelity_;
  Rng rng_;
};

}  // namespace

std::shared_ptr<const PolicyPredictor> make_perfect_policy(const Trace& trace,
                                                           const OptProfile& opt) {
  return std::make_shared<PerfectPolicy>(trace, opt.victims, opt_cache_states(opt));
}

std::shared_ptr<const PolicyPredictor> make_noisy_policy(const Trace& trace, CacheConfig config,
                                                         double fidelity, std::uint64_t seed) {
  if (fidelity < 0 || fidelity > 1) throw ConfigError("fidelity must lie in [0, 1]");
  OccurrenceIndex occ(trace);
  NoisyOwnPolicy own(trace, occ, fidelity, seed);
  SimulationResult run = simulate(own, trace, config, /*record_states=*/true);
  std::vector<std::optional<TagId>> victims;
  victims.reserve(run.decisions.size());
  for (const Decision& d : run.decisions) victims.push_back(d.victim);
  return std::make_shared<NoisyPolicy>(trace, std::move(victims), std::move(run.cache_states));
}

void ErrorAccumulator::add_cache(std::span<const TagId> a, std::span<const TagId> b) {
  // Both sides sorted by id; count elements on exactly one side.
  std::size_t i = 0, j = 0, diff = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i, ++j;
    } else if (a[i] < b[j]) {
      ++i, ++diff;
    } else {
      ++j, ++diff;
    }
  }
  eta_cache += diff + (a.size() - i) + (b.size() - j);
}

std::uint64_t eta_reuse_raw(std::span<const std::size_t> truth,
                            std::span<const std::size_t> predicted) {
  if (truth.size() != predicted.size()) {
    throw ConsistencyError("reuse error needs equally long truth and prediction arrays");
  }
  ErrorAccumulator acc;
  for (std::size_t t = 0; t < truth.size(); ++t) acc.add_reuse(truth[t], predicted[t]);
  return acc.eta_reuse;
}

std::uint64_t eta_reuse(const Trace& trace, const ReusePredictor& predictor,
                        const NextUseTable& next_use) {
  ErrorAccumulator acc;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    acc.add_reuse(next_use.next[t], predictor.predict(t, trace.at(t)));
  }
  return acc.eta_reuse;
}

std::uint64_t eta_cache(std::span<const std::vector<TagId>> predictor_states,
                        std::span<const std::vector<TagId>> opt_states) {
  if (predictor_states.size() != opt_states.size()) {
    throw ConsistencyError("cache-error state sequences differ in length");
  }
  ErrorAccumulator acc;
  for (std::size_t t = 0; t < opt_states.size(); ++t) {
    acc.add_cache(predictor_states[t], opt_states[t]);
  }
  return acc.eta_cache;
}

}  // namespace augcache
