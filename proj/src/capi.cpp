#include "augcache/augcache.h"

#include <exception>
#include <string>

#include "bench.hpp"
#include "error.hpp"
#include "trace.hpp"

struct augcache_traces {
  std::map<unsigned, augcache::Trace> sets;
};

struct augcache_config {
  augcache::ExperimentConfig cfg;
};

struct augcache_results {
  augcache::ExperimentOutput out;
};

namespace {

thread_local std::string g_last_error;

augcache_status fail(augcache_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class Fn>
augcache_status guarded(Fn&& fn) {
  try {
    fn();
    return AUGCACHE_OK;
  } catch (const augcache::ConfigError& e) {
    return fail(AUGCACHE_CONFIG_ERROR, e.what());
  } catch (const augcache::ParseError& e) {
    return fail(AUGCACHE_PARSE_ERROR, e.what());
  } catch (const augcache::ConsistencyError& e) {
    return fail(AUGCACHE_INTERNAL_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(AUGCACHE_INTERNAL_ERROR, e.what());
  }
}

}  // namespace

extern "C" {

const char* augcache_status_name(augcache_status status) {
  switch (status) {
    case AUGCACHE_OK: return "ok";
    case AUGCACHE_BAD_ARGUMENT: return "bad argument";
    case AUGCACHE_CONFIG_ERROR: return "config error";
    case AUGCACHE_PARSE_ERROR: return "parse error";
    case AUGCACHE_INTERNAL_ERROR: return "internal error";
  }
  return "unknown";
}

const char* augcache_last_error(void) { return g_last_error.c_str(); }

augcache_status augcache_traces_load(const char* path, const unsigned* sets, size_t n_sets,
                                     augcache_traces** out) {
  if (!path || !out) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    std::optional<std::set<unsigned>> filter;
    if (sets && n_sets > 0) filter.emplace(sets, sets + n_sets);
    auto handle = std::make_unique<augcache_traces>();
    handle->sets = augcache::parse_trace_file(path, filter);
    *out = handle.release();
  });
}

augcache_status augcache_traces_generate(const char* gen_spec, uint64_t seed,
                                         augcache_traces** out) {
  if (!gen_spec || !out) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<augcache_traces>();
    handle->sets.emplace(0u, augcache::generate_trace(gen_spec, seed));
    *out = handle.release();
  });
}

augcache_status augcache_traces_save(const augcache_traces* traces, const char* path) {
  if (!traces || !path) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] { augcache::write_traces_file(path, traces->sets); });
}

size_t augcache_traces_count(const augcache_traces* traces) {
  return traces ? traces->sets.size() : 0;
}

void augcache_traces_free(augcache_traces* traces) { delete traces; }

augcache_status augcache_config_new(augcache_config** out) {
  if (!out) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  *out = new augcache_config();
  return AUGCACHE_OK;
}

void augcache_config_free(augcache_config* config) { delete config; }

augcache_status augcache_config_set_trace_name(augcache_config* config, const char* name) {
  if (!config || !name) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  config->cfg.trace_id = name;
  return AUGCACHE_OK;
}

augcache_status augcache_config_set_cache_size(augcache_config* config, unsigned k) {
  if (!config) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  if (k < 1) return fail(AUGCACHE_CONFIG_ERROR, "cache size must be >= 1");
  config->cfg.k = k;
  return AUGCACHE_OK;
}

augcache_status augcache_config_add_algorithm(augcache_config* config, const char* algo) {
  if (!config || !algo) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    augcache::parse_algo_spec(algo);  // reject bad specs eagerly
    config->cfg.algorithms.emplace_back(algo);
  });
}

augcache_status augcache_config_add_predictor(augcache_config* config, const char* predictor) {
  if (!config || !predictor) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    augcache::parse_predictor_spec(predictor);
    config->cfg.predictors.emplace_back(predictor);
  });
}

augcache_status augcache_config_set_combiner(augcache_config* config, const char* combiner) {
  if (!config || !combiner) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    augcache::parse_combiner_spec(combiner);
    config->cfg.combiner = combiner;
  });
}

augcache_status augcache_config_set_fallback(augcache_config* config, const char* fallback) {
  if (!config || !fallback) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  const std::string value = fallback;
  if (value != "marker" && value != "lru") {
    return fail(AUGCACHE_CONFIG_ERROR, "fallback must be 'marker' or 'lru'");
  }
  config->cfg.fallback = value;
  return AUGCACHE_OK;
}

augcache_status augcache_config_set_seed(augcache_config* config, uint64_t seed) {
  if (!config) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  config->cfg.seed = seed;
  return AUGCACHE_OK;
}

augcache_status augcache_config_set_repeats(augcache_config* config, unsigned repeats) {
  if (!config) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  if (repeats < 1) return fail(AUGCACHE_CONFIG_ERROR, "repeats must be >= 1");
  config->cfg.repeats = repeats;
  return AUGCACHE_OK;
}

augcache_status augcache_config_set_slice(augcache_config* config, const char* part,
                                          double train_frac, double valid_frac, double test_frac) {
  if (!config || !part) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  const std::string value = part;
  if (value != "train" && value != "valid" && value != "test") {
    return fail(AUGCACHE_CONFIG_ERROR, "slice part must be 'train', 'valid' or 'test'");
  }
  config->cfg.slice_part = value;
  config->cfg.slice_fracs = {train_frac, valid_frac, test_frac};
  return AUGCACHE_OK;
}

augcache_status augcache_run(const augcache_config* config, const augcache_traces* traces,
                             augcache_results** out) {
  if (!config || !traces || !out) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<augcache_results>();
    handle->out = augcache::run_experiment(config->cfg, traces->sets);
    *out = handle.release();
  });
}

size_t augcache_results_count(const augcache_results* results) {
  return results ? results->out.rows.size() : 0;
}

augcache_status augcache_results_save(const augcache_results* results, const char* path,
                                      const char* format) {
  if (!results || !path || !format) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] { augcache::write_results_file(path, results->out.rows, format); });
}

int augcache_results_has_follow(const augcache_results* results) {
  return results && !results->out.follows.empty() ? 1 : 0;
}

augcache_status augcache_results_save_follow(const augcache_results* results, const char* path) {
  if (!results || !path) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] { augcache::write_follow_file(path, results->out.follows); });
}

void augcache_results_free(augcache_results* results) { delete results; }

augcache_status augcache_report(const char* results_path, const char* mode, const char* out_dir) {
  if (!results_path || !mode || !out_dir) return fail(AUGCACHE_BAD_ARGUMENT, "null argument");
  return guarded([&] { augcache::report(results_path, mode, out_dir); });
}

}  // extern "C"
