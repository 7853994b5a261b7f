#ifndef AUGCACHE_METRICS_HPP
#define AUGCACHE_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sim.hpp"

namespace augcache {

// One benchmark row: algorithm x predictor x trace set x seed with every
// reported quantity. Metrics that do not apply to a run (a prediction error
// without a predictor, the LRU normalization when LRU was optimal) are NaN.
struct RunResult {
  std::string trace_id;
  unsigned set_id = 0;
  std::string algorithm;
  std::string predictor;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::size_t requests = 0;
  std::size_t misses = 0;
  std::size_t opt_cost = 0;
  double hit_rate = 0.0;
  double cr = 0.0;
  double lru_norm = 0.0;
  double eta_reuse = 0.0;
  double eta_cache = 0.0;
  double usage_jaccard = 0.0;
  std::size_t switches = 0;
};

// (L - misses) / L. Undefined on an empty run.
double hit_rate(const SimulationResult& result, std::size_t requests);

// misses / opt_cost; a zero-cost optimum is only meaningful when the
// algorithm also had zero misses (ratio 1).
double competitive_ratio(std::size_t misses, std::size_t opt_cost);

// (cr_alg - 1) / (cr_lru - 1); NaN when LRU itself was optimal.
double lru_normalized(double cr_alg, double cr_lru);

// Mean over time of the Jaccard similarity between two aligned sequences of
// sorted cache contents; a step where both sets are empty counts as 1.
double prediction_usage(std::span<const std::vector<TagId>> alg_states,
                        std::span<const std::vector<TagId>> predictor_states);

// Grouped mean/min/max summaries over result rows.
enum class GroupKey { Trace, Set, Algorithm, Predictor, Seed };

struct SummaryRow {
  std::string group;  // joined key values
  std::size_t count = 0;
  double mean_cr = 0.0, min_cr = 0.0, max_cr = 0.0;
  double mean_lru_norm = 0.0, min_lru_norm = 0.0, max_lru_norm = 0.0;
  double mean_hit_rate = 0.0, min_hit_rate = 0.0, max_hit_rate = 0.0;
  double mean_usage = 0.0;
  double mean_misses = 0.0;
};

std::vector<SummaryRow> aggregate(std::span<const RunResult> results,
                                  std::span<const GroupKey> keys);

}  // namespace augcache

#endif
