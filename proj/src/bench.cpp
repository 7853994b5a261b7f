#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "augmented.hpp"
#include "classical.hpp"
#include "combiner.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "predictors.hpp"
#include "rng.hpp"

namespace augcache {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

AlgoSpec parse_algo_spec(const std::string& spec) {
  static const std::map<std::string, AlgoKind> kinds = {
      {"opt", AlgoKind::Opt},
      {"lru", AlgoKind::Lru},
      {"random", AlgoKind::Random},
      {"marker", AlgoKind::Marker},
      {"predictive-marker", AlgoKind::PredictiveMarker},
      {"lmarker", AlgoKind::LMarker},
      {"lnonmarker", AlgoKind::LNonMarker},
      {"blind-oracle", AlgoKind::BlindOracle},
      {"ftp", AlgoKind::Ftp},
  };
  auto it = kinds.find(spec);
  if (it == kinds.end()) throw ConfigError("unknown algorithm: '" + spec + "'");
  return AlgoSpec{it->second, spec};
}

namespace {

double parse_param(const std::string& spec, std::size_t colon, const char* what) {
  const std::string text = spec.substr(colon + 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " in '" + spec + "'");
  }
}

}  // namespace

PredSpec parse_predictor_spec(const std::string& spec) {
  if (spec.empty() || spec == "none") return PredSpec{PredKind::None, 0.0, "none"};
  if (spec == "perfect-reuse") return PredSpec{PredKind::PerfectReuse, 0.0, spec};
  if (spec == "adv-reuse") return PredSpec{PredKind::AdvReuse, 0.0, spec};
  if (spec == "perfect-policy") return PredSpec{PredKind::PerfectPolicy, 0.0, spec};
  if (spec.rfind("noisy-reuse:", 0) == 0) {
    const double sigma = parse_param(spec, 11, "noise scale");
    if (sigma < 0) throw ConfigError("noise scale must be >= 0 in '" + spec + "'");
    return PredSpec{PredKind::NoisyReuse, sigma, spec};
  }
  if (spec.rfind("noisy-policy:", 0) == 0) {
    const double p = parse_param(spec, 12, "fidelity");
    if (p < 0 || p > 1) throw ConfigError("fidelity must lie in [0,1] in '" + spec + "'");
    return PredSpec{PredKind::NoisyPolicy, p, spec};
  }
  throw ConfigError("unknown predictor: '" + spec + "'");
}

CombinerSpec parse_combiner_spec(const std::string& spec) {
  if (spec.empty() || spec == "none") return CombinerSpec{CombinerSpec::Kind::None, 0.0, "none"};
  if (spec.rfind("det:", 0) == 0) {
    const double gamma = parse_param(spec, 3, "switching factor");
    if (!(gamma > 1.0)) throw ConfigError("switching factor must be > 1 in '" + spec + "'");
    return CombinerSpec{CombinerSpec::Kind::Deterministic, gamma, spec};
  }
  if (spec.rfind("rand:", 0) == 0) {
    const double eps = parse_param(spec, 4, "epsilon");
    if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("epsilon must lie in (0,1) in '" + spec + "'");
    return CombinerSpec{CombinerSpec::Kind::Randomized, eps, spec};
  }
  throw ConfigError("unknown combiner: '" + spec + "'");
}

bool algo_uses_reuse_predictions(AlgoKind kind) {
  switch (kind) {
    case AlgoKind::PredictiveMarker:
    case AlgoKind::LMarker:
    case AlgoKind::LNonMarker:
    case AlgoKind::BlindOracle:
      return true;
    default:
      return false;
  }
}

bool algo_uses_policy_predictions(AlgoKind kind) { return kind == AlgoKind::Ftp; }

namespace {

bool algo_is_augmented(AlgoKind kind) {
  return algo_uses_reuse_predictions(kind) || algo_uses_policy_predictions(kind);
}

struct ParsedConfig {
  std::vector<AlgoSpec> algorithms;
  std::vector<PredSpec> predictors;  // "none" entry when list was empty
  CombinerSpec combiner;
  bool fallback_is_lru = false;
};

ParsedConfig validate_config(const ExperimentConfig& config) {
  if (config.k < 1) throw ConfigError("cache size must be >= 1");
  if (config.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (config.algorithms.empty()) throw ConfigError("no algorithms given");
  if (config.fallback != "marker" && config.fallback != "lru") {
    throw ConfigError("fallback must be 'marker' or 'lru'");
  }
  if (!config.slice_part.empty() && config.slice_part != "train" &&
      config.slice_part != "valid" && config.slice_part != "test") {
    throw ConfigError("slice must be 'train', 'valid' or 'test'");
  }

  ParsedConfig parsed;
  parsed.combiner = parse_combiner_spec(config.combiner);
  parsed.fallback_is_lru = config.fallback == "lru";
  for (const auto& a : config.algorithms) parsed.algorithms.push_back(parse_algo_spec(a));
  // The normalization baselines always run.
  for (AlgoKind extra : {AlgoKind::Opt, AlgoKind::Lru}) {
    const bool present = std::any_of(parsed.algorithms.begin(), parsed.algorithms.end(),
                                     [&](const AlgoSpec& a) { return a.kind == extra; });
    if (!present) {
      parsed.algorithms.push_back(extra == AlgoKind::Opt ? AlgoSpec{AlgoKind::Opt, "opt"}
                                                         : AlgoSpec{AlgoKind::Lru, "lru"});
    }
  }
  for (const auto& p : config.predictors) {
    const PredSpec spec = parse_predictor_spec(p);
    if (spec.kind != PredKind::None) parsed.predictors.push_back(spec);
  }
  if (parsed.predictors.empty()) parsed.predictors.push_back(PredSpec{PredKind::None, 0.0, "none"});

  // Every requested pairing must be type-compatible before anything runs.
  for (const AlgoSpec& algo : parsed.algorithms) {
    if (!algo_is_augmented(algo.kind)) continue;
    for (const PredSpec& pred : parsed.predictors) {
      const bool reuse_pred =
          pred.kind == PredKind::PerfectReuse || pred.kind == PredKind::NoisyReuse ||
          pred.kind == PredKind::AdvReuse;
      const bool policy_pred =
          pred.kind == PredKind::PerfectPolicy || pred.kind == PredKind::NoisyPolicy;
      if (algo_uses_reuse_predictions(algo.kind) && !reuse_pred) {
        throw ConfigError("algorithm '" + algo.text + "' needs a reuse-distance predictor, got '" +
                          pred.text + "'");
      }
      if (algo_uses_policy_predictions(algo.kind) && !policy_pred) {
        throw ConfigError("algorithm '" + algo.text + "' needs a policy predictor, got '" +
                          pred.text + "'");
      }
    }
  }
  return parsed;
}

struct SetContext {
  const Trace& trace;
  CacheConfig config;
  const NextUseTable& next_use;
  const OptProfile& opt;
};

std::unique_ptr<Policy> build_core_policy(const AlgoSpec& algo, const SetContext& ctx,
                                          const std::shared_ptr<const ReusePredictor>& reuse_pred,
                                          const std::shared_ptr<const PolicyPredictor>& policy_pred,
                                          std::uint64_t algo_seed) {
  switch (algo.kind) {
    case AlgoKind::Opt: return make_belady_policy(ctx.trace, ctx.next_use);
    case AlgoKind::Lru: return make_lru(ctx.trace.alphabet_size());
    case AlgoKind::Random: return make_random(ctx.trace.alphabet_size(), algo_seed);
    case AlgoKind::Marker: return make_marker(ctx.trace.alphabet_size(), algo_seed);
    case AlgoKind::PredictiveMarker:
      return make_predictive_marker(ctx.trace, ctx.config, reuse_pred, algo_seed);
    case AlgoKind::LMarker: return make_lmarker(ctx.trace, reuse_pred, algo_seed);
    case AlgoKind::LNonMarker: return make_lnonmarker(ctx.trace, reuse_pred, algo_seed);
    case AlgoKind::BlindOracle: return make_blind_oracle(ctx.trace, reuse_pred);
    case AlgoKind::Ftp: return make_ftp(policy_pred);
  }
  throw ConfigError("unhandled algorithm kind");
}

struct SetOutput {
  std::vector<RunResult> rows;
  std::vector<FollowSeries> follows;
};

SetOutput run_one_set(const ExperimentConfig& config, const ParsedConfig& parsed, unsigned set_id,
                      const Trace& full_trace) {
  const Trace* trace = &full_trace;
  Trace sliced;
  if (!config.slice_part.empty()) {
    TraceSlices slices =
        slice_trace(full_trace, config.slice_fracs[0], config.slice_fracs[1], config.slice_fracs[2]);
    if (config.slice_part == "train") sliced = std::move(slices.train);
    else if (config.slice_part == "valid") sliced = std::move(slices.valid);
    else sliced = std::move(slices.test);
    trace = &sliced;
  }

  const CacheConfig cache_config{config.k};
  const NextUseTable next_use = compute_next_use(*trace);
  const OptProfile opt = belady(*trace, cache_config, next_use, /*record_states=*/true);
  const SetContext ctx{*trace, cache_config, next_use, opt};

  auto lru = make_lru(trace->alphabet_size());
  const SimulationResult lru_run = simulate(*lru, *trace, cache_config);
  const double cr_lru = trace->size() == 0 ? 1.0 : competitive_ratio(lru_run.misses, opt.opt_cost);

  SetOutput out;
  for (const AlgoSpec& algo : parsed.algorithms) {
    const bool augmented = algo_is_augmented(algo.kind);
    std::vector<PredSpec> preds;
    if (augmented) preds = parsed.predictors;
    else preds.push_back(PredSpec{PredKind::None, 0.0, "none"});
    if (augmented && preds.size() == 1 && preds[0].kind == PredKind::None) {
      throw ConfigError("algorithm '" + algo.text + "' requires a predictor");
    }

    for (const PredSpec& pred : preds) {
      for (unsigned r = 0; r < config.repeats; ++r) {
        const std::uint64_t run_seed = config.seed + r;
        const std::uint64_t base = mix_seed(run_seed, set_id);

        std::shared_ptr<const ReusePredictor> reuse_pred;
        std::shared_ptr<const PolicyPredictor> policy_pred;
        switch (pred.kind) {
          case PredKind::None: break;
          case PredKind::PerfectReuse: reuse_pred = make_perfect_reuse(next_use); break;
          case PredKind::NoisyReuse:
            reuse_pred = make_noisy_reuse(next_use, pred.param, mix_seed(base, 1));
            break;
          case PredKind::AdvReuse: reuse_pred = make_adversarial_reuse(next_use); break;
          case PredKind::PerfectPolicy: policy_pred = make_perfect_policy(*trace, opt); break;
          case PredKind::NoisyPolicy:
            policy_pred = make_noisy_policy(*trace, cache_config, pred.param, mix_seed(base, 1));
            break;
        }

        auto core = build_core_policy(algo, ctx, reuse_pred, policy_pred, mix_seed(base, 2));
        std::string label = algo.text;
        CombinedPolicy* combined = nullptr;
        std::unique_ptr<Policy> runner;
        if (augmented && parsed.combiner.kind != CombinerSpec::Kind::None) {
          std::unique_ptr<Policy> fallback =
              parsed.fallback_is_lru
                  ? make_lru(trace->alphabet_size())
                  : make_marker(trace->alphabet_size(), mix_seed(base, 3));
          auto wrapped =
              parsed.combiner.kind == CombinerSpec::Kind::Deterministic
                  ? combine_deterministic(std::move(core), std::move(fallback),
                                          parsed.combiner.param, *trace, cache_config)
                  : combine_randomized(std::move(core), std::move(fallback), parsed.combiner.param,
                                       mix_seed(base, 4), *trace, cache_config);
          combined = wrapped.get();
          runner = std::move(wrapped);
          label += "+" + parsed.combiner.text + "+" + config.fallback;
        } else {
          runner = std::move(core);
        }

        const bool want_states = pred.kind != PredKind::None && trace->size() > 0;
        SimulationResult run = simulate(*runner, *trace, cache_config, want_states);
        if (combined) run.aux = combined->follow_log();

        RunResult row;
        row.trace_id = config.trace_id;
        row.set_id = set_id;
        row.algorithm = label;
        row.predictor = pred.text;
        row.seed = run_seed;
        row.k = config.k;
        row.requests = trace->size();
        row.misses = run.misses;
        row.opt_cost = opt.opt_cost;
        row.hit_rate = trace->size() == 0 ? kNaN : hit_rate(run, trace->size());
        row.cr = trace->size() == 0 ? 1.0 : competitive_ratio(run.misses, opt.opt_cost);
        row.lru_norm = trace->size() == 0 ? kNaN : lru_normalized(row.cr, cr_lru);
        row.eta_reuse = reuse_pred ? static_cast<double>(eta_reuse(*trace, *reuse_pred, next_use))
                                   : kNaN;
        row.eta_cache = policy_pred
                            ? static_cast<double>(eta_cache(policy_pred->simulated_states(),
                                                            opt_cache_states(opt)))
                            : kNaN;
        row.usage_jaccard = kNaN;
        if (pred.kind != PredKind::None && trace->size() > 0) {
          if (reuse_pred) {
            auto blind = make_blind_oracle(*trace, reuse_pred);
            const SimulationResult blind_run = simulate(*blind, *trace, cache_config, true);
            row.usage_jaccard = prediction_usage(run.cache_states, blind_run.cache_states);
          } else {
            row.usage_jaccard = prediction_usage(run.cache_states, policy_pred->simulated_states());
          }
        }
        row.switches = combined ? combined->switches() : 0;
        out.rows.push_back(std::move(row));

        if (combined) {
          out.follows.push_back(FollowSeries{config.trace_id, set_id, label, pred.text, run_seed,
                                             combined->follow_log()});
        }
      }
    }
  }
  return out;
}

bool row_less(const RunResult& a, const RunResult& b) {
  return std::tie(a.trace_id, a.set_id, a.algorithm, a.predictor, a.seed) <
         std::tie(b.trace_id, b.set_id, b.algorithm, b.predictor, b.seed);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config,
                                const std::map<unsigned, Trace>& sets) {
  const ParsedConfig parsed = validate_config(config);

  std::vector<std::pair<unsigned, const Trace*>> work;
  work.reserve(sets.size());
  for (const auto& [set_id, trace] : sets) work.emplace_back(set_id, &trace);

  std::vector<SetOutput> per_set(work.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<std::size_t> cursor{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), work.size()));
  auto body = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= work.size()) return;
      try {
        per_set[i] = run_one_set(config, parsed, work[i].first, *work[i].second);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(body);
    for (auto& th : threads) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentOutput out;
  for (auto& chunk : per_set) {
    std::move(chunk.rows.begin(), chunk.rows.end(), std::back_inserter(out.rows));
    std::move(chunk.follows.begin(), chunk.follows.end(), std::back_inserter(out.follows));
  }
  std::sort(out.rows.begin(), out.rows.end(), row_less);
  std::sort(out.follows.begin(), out.follows.end(), [](const FollowSeries& a, const FollowSeries& b) {
    return std::tie(a.trace_id, a.set_id, a.algorithm, a.predictor, a.seed) <
           std::tie(b.trace_id, b.set_id, b.algorithm, b.predictor, b.seed);
  });
  return out;
}

namespace {

// Floats with 6 significant digits; counts as integers; absent metrics "nan".
std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_count(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
  return buf;
}

nlohmann::json row_to_json(const RunResult& r) {
  nlohmann::json j;
  j["trace"] = r.trace_id;
  j["set"] = r.set_id;
  j["algorithm"] = r.algorithm;
  j["predictor"] = r.predictor;
  j["seed"] = r.seed;
  j["k"] = r.k;
  j["requests"] = r.requests;
  j["misses"] = r.misses;
  j["opt_cost"] = r.opt_cost;
  j["hit_rate"] = r.hit_rate;
  j["cr"] = r.cr;
  j["lru_norm"] = r.lru_norm;
  j["eta_reuse"] = r.eta_reuse;
  j["eta_cache"] = r.eta_cache;
  j["usage_jaccard"] = r.usage_jaccard;
  j["switches"] = r.switches;
  return j;
}

double json_real(const nlohmann::json& j, const char* field) {
  const auto& v = j.at(field);
  return v.is_null() ? kNaN : v.get<double>();
}

}  // namespace

void write_results(std::ostream& out, std::span<const RunResult> rows, const std::string& format) {
  if (format == "csv") {
    out << kResultsCsvHeader << '\n';
    for (const RunResult& r : rows) {
      out << r.trace_id << ',' << r.set_id << ',' << r.algorithm << ',' << r.predictor << ','
          << r.seed << ',' << r.k << ',' << r.requests << ',' << r.misses << ',' << r.opt_cost
          << ',' << fmt_real(r.hit_rate) << ',' << fmt_real(r.cr) << ',' << fmt_real(r.lru_norm)
          << ',' << fmt_count(r.eta_reuse) << ',' << fmt_count(r.eta_cache) << ','
          << fmt_real(r.usage_jaccard) << ',' << r.switches << '\n';
    }
    return;
  }
  if (format == "jsonl") {
    for (const RunResult& r : rows) out << row_to_json(r).dump() << '\n';
    return;
  }
  throw ConfigError("unknown output format: '" + format + "'");
}

void write_results_file(const std::string& path, std::span<const RunResult> rows,
                        const std::string& format) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  write_results(out, rows, format);
  if (!out) throw ConfigError("failed writing results: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_metric(const std::string& s, std::size_t line_no) {
  if (s == "nan") return kNaN;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad numeric field '" + s + "'", line_no);
  }
}

std::uint64_t parse_uint(const std::string& s, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad integer field '" + s + "'", line_no);
  }
  return v;
}

RunResult row_from_fields(const std::vector<std::string>& f, std::size_t line_no) {
  if (f.size() != 16) throw ParseError("expected 16 columns", line_no);
  RunResult r;
  r.trace_id = f[0];
  r.set_id = static_cast<unsigned>(parse_uint(f[1], line_no));
  r.algorithm = f[2];
  r.predictor = f[3];
  r.seed = parse_uint(f[4], line_no);
  r.k = parse_uint(f[5], line_no);
  r.requests = parse_uint(f[6], line_no);
  r.misses = parse_uint(f[7], line_no);
  r.opt_cost = parse_uint(f[8], line_no);
  r.hit_rate = parse_metric(f[9], line_no);
  r.cr = parse_metric(f[10], line_no);
  r.lru_norm = parse_metric(f[11], line_no);
  r.eta_reuse = parse_metric(f[12], line_no);
  r.eta_cache = parse_metric(f[13], line_no);
  r.usage_jaccard = parse_metric(f[14], line_no);
  r.switches = parse_uint(f[15], line_no);
  return r;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::vector<RunResult> read_results_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open results file: " + path);
  std::vector<RunResult> rows;
  std::string line;
  std::size_t line_no = 0;
  if (ends_with(path, ".jsonl")) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad jsonl row: ") + e.what(), line_no);
      }
      try {
        RunResult r;
        r.trace_id = j.at("trace").get<std::string>();
        r.set_id = j.at("set").get<unsigned>();
        r.algorithm = j.at("algorithm").get<std::string>();
        r.predictor = j.at("predictor").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.k = j.at("k").get<std::size_t>();
        r.requests = j.at("requests").get<std::size_t>();
        r.misses = j.at("misses").get<std::size_t>();
        r.opt_cost = j.at("opt_cost").get<std::size_t>();
        r.hit_rate = json_real(j, "hit_rate");
        r.cr = json_real(j, "cr");
        r.lru_norm = json_real(j, "lru_norm");
        r.eta_reuse = json_real(j, "eta_reuse");
        r.eta_cache = json_real(j, "eta_cache");
        r.usage_jaccard = json_real(j, "usage_jaccard");
        r.switches = j.at("switches").get<std::size_t>();
        rows.push_back(std::move(r));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad jsonl row: ") + e.what(), line_no);
      }
    }
    return rows;
  }
  if (!std::getline(in, line)) throw ParseError("empty results file", 0);
  ++line_no;
  if (line != kResultsCsvHeader) throw ParseError("unexpected results header", line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    rows.push_back(row_from_fields(split_csv_line(line), line_no));
  }
  return rows;
}

void write_follow_file(const std::string& path, std::span<const FollowSeries> follows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << "trace,set,algorithm,predictor,seed,sides\n";
  for (const FollowSeries& f : follows) {
    out << f.trace_id << ',' << f.set_id << ',' << f.algorithm << ',' << f.predictor << ','
        << f.seed << ',';
    for (std::uint8_t side : f.sides) out << static_cast<char>('0' + side);
    out << '\n';
  }
}

std::vector<FollowSeries> read_follow_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open follow-log file: " + path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return {};
  ++line_no;
  std::vector<FollowSeries> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw ParseError("expected 6 columns", line_no);
    FollowSeries s;
    s.trace_id = f[0];
    s.set_id = static_cast<unsigned>(parse_uint(f[1], line_no));
    s.algorithm = f[2];
    s.predictor = f[3];
    s.seed = parse_uint(f[4], line_no);
    s.sides.reserve(f[5].size());
    for (char c : f[5]) {
      if (c != '0' && c != '1') throw ParseError("bad side character", line_no);
      s.sides.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-' || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

struct GroupStats {
  double lru_norm_sum = 0.0;
  std::size_t lru_norm_count = 0;
  double cr_sum = 0.0;
  std::size_t cr_count = 0;
};

}  // namespace

void report(const std::string& results_path, const std::string& mode, const std::string& out_dir) {
  if (mode != "table" && mode != "plotdata") {
    throw ConfigError("report mode must be 'table' or 'plotdata'");
  }
  const std::vector<RunResult> rows = read_results_file(results_path);
  if (rows.empty()) throw ConfigError("results file has no rows");

  // Normalization needs both baselines on every trace.
  std::map<std::string, std::pair<bool, bool>> baselines;  // trace -> (opt, lru)
  for (const RunResult& r : rows) {
    auto& [has_opt, has_lru] = baselines[r.trace_id];
    has_opt |= r.algorithm == "opt";
    has_lru |= r.algorithm == "lru";
  }
  for (const auto& [trace, present] : baselines) {
    if (!present.first) throw ConfigError("missing baseline 'opt' for trace '" + trace + "'");
    if (!present.second) throw ConfigError("missing baseline 'lru' for trace '" + trace + "'");
  }

  std::filesystem::create_directories(out_dir);

  std::map<std::pair<std::string, std::string>, GroupStats> by_label_trace;
  std::vector<std::string> traces;
  for (const RunResult& r : rows) {
    const std::string label = r.predictor == "none" ? r.algorithm : r.algorithm + "/" + r.predictor;
    GroupStats& g = by_label_trace[{label, r.trace_id}];
    if (!std::isnan(r.lru_norm)) {
      g.lru_norm_sum += r.lru_norm;
      ++g.lru_norm_count;
    }
    if (!std::isnan(r.cr)) {
      g.cr_sum += r.cr;
      ++g.cr_count;
    }
    if (std::find(traces.begin(), traces.end(), r.trace_id) == traces.end()) {
      traces.push_back(r.trace_id);
    }
  }
  std::sort(traces.begin(), traces.end());

  if (mode == "table") {
    std::vector<std::string> labels;
    for (const auto& [key, _] : by_label_trace) {
      if (labels.empty() || labels.back() != key.first) labels.push_back(key.first);
    }
    std::size_t width = 9;
    for (const auto& label : labels) width = std::max(width, label.size());

    std::ostringstream table;
    table << "LRU-normalized empirical competitive ratio (mean over sets and seeds)\n";
    table << std::string(width, ' ');
    for (const auto& trace : traces) table << "  " << trace;
    table << '\n';
    for (const auto& label : labels) {
      table << label << std::string(width - label.size(), ' ');
      for (const auto& trace : traces) {
        auto it = by_label_trace.find({label, trace});
        std::string cell = "-";
        if (it != by_label_trace.end() && it->second.lru_norm_count > 0) {
          cell = fmt_real(it->second.lru_norm_sum / static_cast<double>(it->second.lru_norm_count));
        } else if (it != by_label_trace.end()) {
          cell = "n/a";
        }
        table << "  " << std::string(trace.size() > cell.size() ? trace.size() - cell.size() : 0, ' ')
              << cell;
      }
      table << '\n';
    }
    std::ofstream out(std::filesystem::path(out_dir) / "table.txt");
    if (!out) throw ConfigError("cannot write table to: " + out_dir);
    out << table.str();
    return;
  }

  // plotdata
  {
    std::ofstream out(std::filesystem::path(out_dir) / "normalized_cost.csv");
    if (!out) throw ConfigError("cannot write plot data to: " + out_dir);
    out << "trace,label,mean_lru_norm,mean_cr\n";
    for (const auto& [key, g] : by_label_trace) {
      out << key.second << ',' << key.first << ','
          << (g.lru_norm_count ? fmt_real(g.lru_norm_sum / static_cast<double>(g.lru_norm_count))
                               : "nan")
          << ',' << (g.cr_count ? fmt_real(g.cr_sum / static_cast<double>(g.cr_count)) : "nan")
          << '\n';
    }
  }
  const std::string follow_path = results_path + ".follow.csv";
  if (std::filesystem::exists(follow_path)) {
    for (const FollowSeries& f : read_follow_file(follow_path)) {
      const std::string name = "follow_" + sanitize(f.trace_id) + "_" + std::to_string(f.set_id) +
                               "_" + sanitize(f.algorithm) + "_" + sanitize(f.predictor) + "_" +
                               std::to_string(f.seed) + ".csv";
      std::ofstream out(std::filesystem::path(out_dir) / name);
      if (!out) throw ConfigError("cannot write plot data to: " + out_dir);
      out << "step,side\n";
      for (std::size_t t = 0; t < f.sides.size(); ++t) {
        out << t << ',' << static_cast<int>(f.sides[t]) << '\n';
      }
    }
  }
}

}  // namespace augcache
