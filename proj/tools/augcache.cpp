// Command-line front end; all simulation work happens behind the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "augcache/augcache.h"

namespace {

int exit_code(augcache_status status) {
  switch (status) {
    case AUGCACHE_OK: return 0;
    case AUGCACHE_BAD_ARGUMENT:
    case AUGCACHE_CONFIG_ERROR: return 2;
    case AUGCACHE_PARSE_ERROR: return 3;
    case AUGCACHE_INTERNAL_ERROR: return 4;
  }
  return 4;
}

int report_failure(augcache_status status) {
  std::cerr << "augcache: " << augcache_status_name(status) << ": " << augcache_last_error()
            << '\n';
  return exit_code(status);
}

struct RunOptions {
  std::string trace_file;
  std::string gen_spec;
  std::vector<unsigned> sets;
  unsigned cache_size = 16;
  std::vector<std::string> algorithms;
  std::vector<std::string> predictors;
  std::string combiner;
  std::string fallback = "marker";
  std::uint64_t seed = 0;
  unsigned repeats = 1;
  std::string out_path;
  std::string format = "csv";
  std::string slice;
  std::vector<double> slice_fracs{0.8, 0.1, 0.1};
};

using TracesPtr = std::unique_ptr<augcache_traces, decltype(&augcache_traces_free)>;
using ConfigPtr = std::unique_ptr<augcache_config, decltype(&augcache_config_free)>;
using ResultsPtr = std::unique_ptr<augcache_results, decltype(&augcache_results_free)>;

int cmd_run(const RunOptions& opt) {
  augcache_status st = AUGCACHE_OK;

  augcache_traces* traces_raw = nullptr;
  if (!opt.trace_file.empty()) {
    st = augcache_traces_load(opt.trace_file.c_str(), opt.sets.empty() ? nullptr : opt.sets.data(),
                              opt.sets.size(), &traces_raw);
  } else {
    st = augcache_traces_generate(opt.gen_spec.c_str(), opt.seed, &traces_raw);
  }
  if (st != AUGCACHE_OK) return report_failure(st);
  TracesPtr traces(traces_raw, &augcache_traces_free);

  augcache_config* config_raw = nullptr;
  if ((st = augcache_config_new(&config_raw)) != AUGCACHE_OK) return report_failure(st);
  ConfigPtr config(config_raw, &augcache_config_free);

  const std::string trace_name = opt.trace_file.empty() ? opt.gen_spec : opt.trace_file;
  if ((st = augcache_config_set_trace_name(config.get(), trace_name.c_str())) != AUGCACHE_OK ||
      (st = augcache_config_set_cache_size(config.get(), opt.cache_size)) != AUGCACHE_OK ||
      (st = augcache_config_set_seed(config.get(), opt.seed)) != AUGCACHE_OK ||
      (st = augcache_config_set_repeats(config.get(), opt.repeats)) != AUGCACHE_OK ||
      (st = augcache_config_set_fallback(config.get(), opt.fallback.c_str())) != AUGCACHE_OK) {
    return report_failure(st);
  }
  if (!opt.combiner.empty() &&
      (st = augcache_config_set_combiner(config.get(), opt.combiner.c_str())) != AUGCACHE_OK) {
    return report_failure(st);
  }
  if (!opt.slice.empty() &&
      (st = augcache_config_set_slice(config.get(), opt.slice.c_str(), opt.slice_fracs[0],
                                      opt.slice_fracs[1], opt.slice_fracs[2])) != AUGCACHE_OK) {
    return report_failure(st);
  }
  for (const auto& algo : opt.algorithms) {
    if ((st = augcache_config_add_algorithm(config.get(), algo.c_str())) != AUGCACHE_OK) {
      return report_failure(st);
    }
  }
  for (const auto& pred : opt.predictors) {
    if ((st = augcache_config_add_predictor(config.get(), pred.c_str())) != AUGCACHE_OK) {
      return report_failure(st);
    }
  }

  augcache_results* results_raw = nullptr;
  if ((st = augcache_run(config.get(), traces.get(), &results_raw)) != AUGCACHE_OK) {
    return report_failure(st);
  }
  ResultsPtr results(results_raw, &augcache_results_free);

  if ((st = augcache_results_save(results.get(), opt.out_path.c_str(), opt.format.c_str())) !=
      AUGCACHE_OK) {
    return report_failure(st);
  }
  if (augcache_results_has_follow(results.get())) {
    const std::string follow_path = opt.out_path + ".follow.csv";
    if ((st = augcache_results_save_follow(results.get(), follow_path.c_str())) != AUGCACHE_OK) {
      return report_failure(st);
    }
  }
  std::cout << "wrote " << augcache_results_count(results.get()) << " rows to " << opt.out_path
            << '\n';
  return 0;
}

struct GenOptions {
  std::string kind;
  std::size_t len = 10000;
  std::size_t alphabet = 256;
  double exponent = 0.8;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_gen(const GenOptions& opt) {
  std::string spec;
  if (opt.kind == "zipf") {
    spec = "zipf:" + std::to_string(opt.len) + ":" + std::to_string(opt.alphabet) + ":" +
           std::to_string(opt.exponent);
  } else if (opt.kind == "scanloop") {
    // --alphabet doubles as the loop length.
    spec = "scanloop:" + std::to_string(opt.len) + ":" + std::to_string(opt.alphabet);
  } else {
    // Two equal zipf phases over disjoint populations.
    const std::size_t half = opt.len / 2;
    spec = "phased:zipf," + std::to_string(half) + "," + std::to_string(opt.alphabet) + "," +
           std::to_string(opt.exponent) + "+zipf," + std::to_string(opt.len - half) + "," +
           std::to_string(opt.alphabet) + "," + std::to_string(opt.exponent);
  }

  augcache_traces* traces_raw = nullptr;
  augcache_status st = augcache_traces_generate(spec.c_str(), opt.seed, &traces_raw);
  if (st != AUGCACHE_OK) return report_failure(st);
  TracesPtr traces(traces_raw, &augcache_traces_free);
  if ((st = augcache_traces_save(traces.get(), opt.out_path.c_str())) != AUGCACHE_OK) {
    return report_failure(st);
  }
  std::cout << "wrote " << opt.out_path << " (" << spec << ")\n";
  return 0;
}

int cmd_report(const std::string& in_path, const std::string& mode, const std::string& out_dir) {
  const augcache_status st = augcache_report(in_path.c_str(), mode.c_str(), out_dir.c_str());
  if (st != AUGCACHE_OK) return report_failure(st);
  if (mode == "table") {
    std::ifstream table(out_dir + "/table.txt");
    std::cout << table.rdbuf();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"augcache - trace-driven cache eviction laboratory"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "run an experiment matrix and write result rows");
  auto* trace_opt = run->add_option("--trace", run_opt.trace_file, "trace file (set_id,tag lines)");
  auto* gen_opt = run->add_option("--gen", run_opt.gen_spec, "generator spec instead of a file");
  trace_opt->excludes(gen_opt);
  run->add_option("--sets", run_opt.sets, "restrict to these set ids")->delimiter(',');
  run->add_option("--cache-size", run_opt.cache_size, "cache capacity k")->default_val(16);
  run->add_option("--algo", run_opt.algorithms, "algorithms to run")->delimiter(',')->required();
  run->add_option("--predictor", run_opt.predictors, "predictor specs")->delimiter(',');
  run->add_option("--combiner", run_opt.combiner, "det:<gamma> or rand:<epsilon>");
  run->add_option("--fallback", run_opt.fallback, "combiner fallback side")
      ->check(CLI::IsMember({"marker", "lru"}))
      ->default_val("marker");
  run->add_option("--seed", run_opt.seed, "base seed")->default_val(0);
  run->add_option("--repeats", run_opt.repeats, "seeds per pairing")->default_val(1);
  run->add_option("--out", run_opt.out_path, "results file")->required();
  run->add_option("--format", run_opt.format, "results format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->default_val("csv");
  run->add_option("--slice", run_opt.slice, "simulate only one split part")
      ->check(CLI::IsMember({"train", "valid", "test"}));
  run->add_option("--slice-fracs", run_opt.slice_fracs, "train,valid,test fractions")
      ->delimiter(',')
      ->expected(3);

  GenOptions gen_opt2;
  auto* gen = app.add_subcommand("gen", "write a synthetic trace file");
  gen->add_option("--kind", gen_opt2.kind, "workload kind")
      ->check(CLI::IsMember({"zipf", "scanloop", "phased"}))
      ->required();
  gen->add_option("--len", gen_opt2.len, "total requests")->default_val(10000);
  gen->add_option("--alphabet", gen_opt2.alphabet, "alphabet size (scanloop: loop length)")
      ->default_val(256);
  gen->add_option("--exponent", gen_opt2.exponent, "zipf exponent")->default_val(0.8);
  gen->add_option("--seed", gen_opt2.seed, "generator seed")->default_val(0);
  gen->add_option("--out", gen_opt2.out_path, "trace file to write")->required();

  std::string report_in, report_mode = "table", report_out = ".";
  auto* report = app.add_subcommand("report", "summarize a results file");
  report->add_option("--in", report_in, "results file (csv or jsonl)")->required();
  report->add_option("--mode", report_mode, "report mode")
      ->check(CLI::IsMember({"table", "plotdata"}))
      ->default_val("table");
  report->add_option("--out", report_out, "output directory")->default_val(".");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) {
    if (run_opt.trace_file.empty() && run_opt.gen_spec.empty()) {
      std::cerr << "augcache: config error: one of --trace or --gen is required\n";
      return 2;
    }
    return cmd_run(run_opt);
  }
  if (gen->parsed()) return cmd_gen(gen_opt2);
  return cmd_report(report_in, report_mode, report_out);
}
