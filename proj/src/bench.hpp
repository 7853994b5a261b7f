#ifndef AUGCACHE_BENCH_HPP
#define AUGCACHE_BENCH_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "trace.hpp"

namespace augcache {

enum class AlgoKind {
  Opt,
  Lru,
  Random,
  Marker,
  PredictiveMarker,
  LMarker,
  LNonMarker,
  BlindOracle,
  Ftp,
};

enum class PredKind { None, PerfectReuse, NoisyReuse, AdvReuse, PerfectPolicy, NoisyPolicy };

struct AlgoSpec {
  AlgoKind kind;
  std::string text;
};

struct PredSpec {
  PredKind kind;
  double param = 0.0;  // noise scale / fidelity
  std::string text;
};

struct CombinerSpec {
  enum class Kind { None, Deterministic, Randomized } kind = Kind::None;
  double param = 0.0;  // gamma / epsilon
  std::string text;
};

AlgoSpec parse_algo_spec(const std::string& spec);
PredSpec parse_predictor_spec(const std::string& spec);
CombinerSpec parse_combiner_spec(const std::string& spec);

bool algo_uses_reuse_predictions(AlgoKind kind);
bool algo_uses_policy_predictions(AlgoKind kind);

struct ExperimentConfig {
  std::string trace_id;
  std::size_t k = 16;
  std::vector<std::string> algorithms;
  std::vector<std::string> predictors;  // may be empty
  std::string combiner;                 // empty = run cores bare
  std::string fallback = "marker";
  std::uint64_t seed = 0;
  unsigned repeats = 1;
  std::string slice_part;  // "", "train", "valid" or "test"
  std::array<double, 3> slice_fracs{0.8, 0.1, 0.1};
};

// Followed-side series of one combined run (0 = prediction side, 1 = fallback).
struct FollowSeries {
  std::string trace_id;
  unsigned set_id = 0;
  std::string algorithm;
  std::string predictor;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> sides;
};

struct ExperimentOutput {
  std::vector<RunResult> rows;        // canonical order
  std::vector<FollowSeries> follows;  // one per combined run
};

// Runs the full matrix (with `opt` and `lru` appended) over every trace set.
// Per-set work runs in parallel; the output order is canonical regardless.
ExperimentOutput run_experiment(const ExperimentConfig& config,
                                const std::map<unsigned, Trace>& sets);

inline constexpr const char* kResultsCsvHeader =
    "trace,set,algorithm,predictor,seed,k,requests,misses,opt_cost,hit_rate,cr,lru_norm,"
    "eta_reuse,eta_cache,usage_jaccard,switches";

void write_results(std::ostream& out, std::span<const RunResult> rows, const std::string& format);
void write_results_file(const std::string& path, std::span<const RunResult> rows,
                        const std::string& format);
std::vector<RunResult> read_results_file(const std::string& path);

void write_follow_file(const std::string& path, std::span<const FollowSeries> follows);
std::vector<FollowSeries> read_follow_file(const std::string& path);

// `table` writes table.txt (and returns its content via the file); `plotdata`
// writes normalized_cost.csv plus one follow_*.csv per recorded combiner run
// (taken from <results_path>.follow.csv when present).
void report(const std::string& results_path, const std::string& mode, const std::string& out_dir);

}  // namespace augcache

#endif
