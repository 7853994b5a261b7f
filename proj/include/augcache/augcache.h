/*
 * augcache - trace-driven cache eviction laboratory.
 *
 * C interface over the simulation core. All objects are opaque handles owned
 * by the library; every constructor has a matching _free. Functions return
 * AUGCACHE_OK on success; on failure augcache_last_error() describes what
 * went wrong (the message is thread-local and valid until the next failing
 * call on the same thread).
 */
#ifndef AUGCACHE_H
#define AUGCACHE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum augcache_status {
  AUGCACHE_OK = 0,
  AUGCACHE_BAD_ARGUMENT = 1,   /* null handle or missing required argument */
  AUGCACHE_CONFIG_ERROR = 2,   /* invalid specs, parameters or pairings */
  AUGCACHE_PARSE_ERROR = 3,    /* malformed input file */
  AUGCACHE_INTERNAL_ERROR = 4, /* internal consistency violation */
} augcache_status;

/* A set-id -> request-sequence mapping (the contents of one trace file). */
typedef struct augcache_traces augcache_traces;
/* An experiment description: algorithms, predictors, combiner, seeds. */
typedef struct augcache_config augcache_config;
/* Benchmark rows plus any recorded combiner follow logs. */
typedef struct augcache_results augcache_results;

const char* augcache_status_name(augcache_status status);
const char* augcache_last_error(void);

/*
 * Loads a trace file (`set_id,tag` lines, `#` comments). `sets` optionally
 * restricts parsing to the given set ids; pass NULL/0 to keep everything.
 */
augcache_status augcache_traces_load(const char* path, const unsigned* sets, size_t n_sets,
                                     augcache_traces** out);

/*
 * Builds a single-set (id 0) synthetic trace from a generator spec:
 *   zipf:<len>:<alphabet>:<exponent>
 *   scanloop:<len>:<loop>
 *   phased:<seg>+<seg>+...   seg = zipf,<len>,<alphabet>,<exp> | scanloop,<len>,<loop>
 */
augcache_status augcache_traces_generate(const char* gen_spec, uint64_t seed,
                                         augcache_traces** out);

augcache_status augcache_traces_save(const augcache_traces* traces, const char* path);
size_t augcache_traces_count(const augcache_traces* traces);
void augcache_traces_free(augcache_traces* traces);

augcache_status augcache_config_new(augcache_config** out);
void augcache_config_free(augcache_config* config);

/* Label recorded in the `trace` column of every result row. */
augcache_status augcache_config_set_trace_name(augcache_config* config, const char* name);
augcache_status augcache_config_set_cache_size(augcache_config* config, unsigned k);

/*
 * Algorithms: opt | lru | random | marker | predictive-marker | lmarker |
 * lnonmarker | blind-oracle | ftp. `opt` and `lru` always run in addition.
 */
augcache_status augcache_config_add_algorithm(augcache_config* config, const char* algo);

/*
 * Predictors: perfect-reuse | noisy-reuse:<sigma> | adv-reuse |
 * perfect-policy | noisy-policy:<p>. Reuse predictors pair with
 * predictive-marker/lmarker/lnonmarker/blind-oracle, policy predictors with
 * ftp; an incompatible pairing fails before anything runs.
 */
augcache_status augcache_config_add_predictor(augcache_config* config, const char* predictor);

/* Combiners: det:<gamma> | rand:<epsilon> | none (default). */
augcache_status augcache_config_set_combiner(augcache_config* config, const char* combiner);
/* Fallback side under a combiner: marker (default) | lru. */
augcache_status augcache_config_set_fallback(augcache_config* config, const char* fallback);
augcache_status augcache_config_set_seed(augcache_config* config, uint64_t seed);
augcache_status augcache_config_set_repeats(augcache_config* config, unsigned repeats);
/* Restrict each set to its train/valid/test slice before simulating. */
augcache_status augcache_config_set_slice(augcache_config* config, const char* part,
                                          double train_frac, double valid_frac, double test_frac);

augcache_status augcache_run(const augcache_config* config, const augcache_traces* traces,
                             augcache_results** out);

size_t augcache_results_count(const augcache_results* results);
/* format: "csv" | "jsonl". */
augcache_status augcache_results_save(const augcache_results* results, const char* path,
                                      const char* format);
int augcache_results_has_follow(const augcache_results* results);
/* Follow-log sidecar for `report --mode plotdata`. */
augcache_status augcache_results_save_follow(const augcache_results* results, const char* path);
void augcache_results_free(augcache_results* results);

/* mode: "table" | "plotdata". Reads csv or jsonl results by extension. */
augcache_status augcache_report(const char* results_path, const char* mode, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* AUGCACHE_H */
