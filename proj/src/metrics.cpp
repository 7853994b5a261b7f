#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "error.hpp"

namespace augcache {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double hit_rate(const SimulationResult& result, std::size_t requests) {
  if (requests == 0) throw ConfigError("hit rate undefined for an empty run");
  return static_cast<double>(requests - result.misses) / static_cast<double>(requests);
}

double competitive_ratio(std::size_t misses, std::size_t opt_cost) {
  if (misses < opt_cost) {
    throw ConsistencyError("algorithm beat the offline optimum (" + std::to_string(misses) +
                           " < " + std::to_string(opt_cost) + ")");
  }
  if (opt_cost == 0) {
    if (misses == 0) return 1.0;
    throw ConfigError("competitive ratio undefined: optimum cost is zero");
  }
  return static_cast<double>(misses) / static_cast<double>(opt_cost);
}

double lru_normalized(double cr_alg, double cr_lru) {
  if (!(cr_lru > 1.0)) return kNaN;  // LRU optimal on this trace
  return (cr_alg - 1.0) / (cr_lru - 1.0);
}

namespace {

double jaccard(std::span<const TagId> a, std::span<const TagId> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common, ++i, ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t unions = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(unions);
}

}  // namespace

double prediction_usage(std::span<const std::vector<TagId>> alg_states,
                        std::span<const std::vector<TagId>> predictor_states) {
  if (alg_states.size() != predictor_states.size()) {
    throw ConsistencyError("prediction-usage state sequences differ in length");
  }
  if (alg_states.empty()) throw ConfigError("prediction usage undefined for an empty run");
  double sum = 0.0;
  for (std::size_t t = 0; t < alg_states.size(); ++t) {
    sum += jaccard(alg_states[t], predictor_states[t]);
  }
  return sum / static_cast<double>(alg_states.size());
}

namespace {

struct Stats {
  std::size_t count = 0;
  double sum = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (std::isnan(v)) return;
    ++count;
    sum += v;
    min = std::min(min, v);
    max = std::max(max, v);
  }
  double mean() const { return count ? sum / static_cast<double>(count) : kNaN; }
  double lo() const { return count ? min : kNaN; }
  double hi() const { return count ? max : kNaN; }
};

std::string key_of(const RunResult& r, std::span<const GroupKey> keys) {
  std::string out;
  for (GroupKey k : keys) {
    if (!out.empty()) out += '|';
    switch (k) {
      case GroupKey::Trace: out += r.trace_id; break;
      case GroupKey::Set: out += std::to_string(r.set_id); break;
      case GroupKey::Algorithm: out += r.algorithm; break;
      case GroupKey::Predictor: out += r.predictor; break;
      case GroupKey::Seed: out += std::to_string(r.seed); break;
    }
  }
  return out;
}

}  // namespace

std::vector<SummaryRow> aggregate(std::span<const RunResult> results,
                                  std::span<const GroupKey> keys) {
  if (results.empty()) throw ConfigError("nothing to aggregate");
  struct Acc {
    Stats cr, lru_norm, hit, usage, misses;
  };
  std::map<std::string, Acc> groups;  // ordered for deterministic output
  for (const RunResult& r : results) {
    Acc& acc = groups[key_of(r, keys)];
    acc.cr.add(r.cr);
    acc.lru_norm.add(r.lru_norm);
    acc.hit.add(r.hit_rate);
    acc.usage.add(r.usage_jaccard);
    acc.misses.add(static_cast<double>(r.misses));
  }
  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (const auto& [group, acc] : groups) {
    SummaryRow row;
    row.group = group;
    row.count = acc.cr.count;
    row.mean_cr = acc.cr.mean();
    row.min_cr = acc.cr.lo();
    row.max_cr = acc.cr.hi();
    row.mean_lru_norm = acc.lru_norm.mean();
    row.min_lru_norm = acc.lru_norm.lo();
    row.max_lru_norm = acc.lru_norm.hi();
    row.mean_hit_rate = acc.hit.mean();
    row.min_hit_rate = acc.hit.lo();
    row.max_hit_rate = acc.hit.hi();
    row.mean_usage = acc.usage.mean();
    row.mean_misses = acc.misses.mean();
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace augcache
