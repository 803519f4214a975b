// mtcsc: speed-constraint cleaning of multivariate time series from CSV.

#include <CLI11.hpp>

#include "mtcsc/commands.hpp"

namespace {

using namespace mtcsc;
using namespace mtcsc::cli;

void add_constraint_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--speed", cfg.s_max, "maximum speed s (units per second)")->capture_default_str();
  app->add_option("--window", cfg.window, "constraint window w (seconds)")->capture_default_str();
  app->add_option("--buckets", cfg.adaptive.buckets, "adaptive: bucket count b")->capture_default_str();
  app->add_option("--tau", cfg.adaptive.tau, "adaptive: KL threshold")->capture_default_str();
  app->add_option("--interval", cfg.adaptive.interval, "adaptive: monitoring interval m")
      ->capture_default_str();
  app->add_option("--beta", cfg.adaptive.beta, "adaptive: modify factor")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repair multivariate time series under speed constraints"};
  app.require_subcommand(1);

  std::string algorithm = "cluster";
  std::string pattern = "together";

  CleanArgs clean;
  auto* clean_cmd = app.add_subcommand("clean", "repair a series file");
  clean_cmd->add_option("input", clean.input, "input CSV")->required();
  clean_cmd->add_option("--output,-o", clean.output, "repaired CSV")->required();
  clean_cmd->add_option("--algorithm", algorithm, "global|local|cluster|adaptive")
      ->capture_default_str();
  clean_cmd->add_option("--trace", clean.trace, "adaptive: write (timestamp,s_max) changes");
  add_constraint_flags(clean_cmd, clean.config);

  InjectArgs inject;
  auto* inject_cmd = app.add_subcommand("inject", "corrupt a clean series");
  inject_cmd->add_option("input", inject.input, "truth CSV")->required();
  inject_cmd->add_option("--output,-o", inject.output, "dirty CSV")->required();
  inject_cmd->add_option("--errors", inject.errors, "error index CSV (default <output>.errors.csv)");
  inject_cmd->add_option("--error-rate", inject.rate, "fraction of points")->capture_default_str();
  inject_cmd->add_option("--pattern", pattern, "together|separate")->capture_default_str();
  inject_cmd->add_option("--seed", inject.seed, "RNG seed")->capture_default_str();

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "score a repair against the truth");
  eval_cmd->add_option("truth", eval.truth)->required();
  eval_cmd->add_option("dirty", eval.dirty)->required();
  eval_cmd->add_option("repaired", eval.repaired)->required();
  eval_cmd->add_option("--csv", eval.csv, "also write a CSV report row");
  eval_cmd->add_option("--algorithm", eval.algorithm, "label for the CSV row");
  eval_cmd->add_option("--error-rate", eval.error_rate, "label for the CSV row");
  eval_cmd->add_option("--pattern", eval.pattern, "label for the CSV row");
  eval_cmd->add_option("--seed", eval.seed, "label for the CSV row");

  BenchArgs bench;
  std::vector<std::string> bench_algorithms;
  auto* bench_cmd = app.add_subcommand("bench", "time every algorithm on synthetic walks");
  bench_cmd->add_option("--sizes", bench.sizes, "series lengths")->delimiter(',');
  bench_cmd->add_option("--algorithms", bench_algorithms, "subset of algorithms")->delimiter(',');
  bench_cmd->add_option("--dims", bench.dimension, "dimension D")->capture_default_str();
  bench_cmd->add_option("--seed", bench.config.seed, "RNG seed")->capture_default_str();
  bench_cmd->add_option("--error-rate", bench.config.error_rate, "injected error rate")
      ->capture_default_str();
  bench_cmd->add_option("--pattern", pattern, "together|separate")->capture_default_str();
  bench_cmd->add_option("--output,-o", bench.output, "CSV destination (default stdout)");
  add_constraint_flags(bench_cmd, bench.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*clean_cmd) {
      clean.config.algorithm = parse_algorithm(algorithm);
      return cmd_clean(clean);
    }
    if (*inject_cmd) {
      inject.pattern = parse_pattern(pattern);
      return cmd_inject(inject);
    }
    if (*eval_cmd) return cmd_evaluate(eval);
    if (*bench_cmd) {
      bench.config.pattern = parse_pattern(pattern);
      if (!bench_algorithms.empty()) {
        bench.algorithms.clear();
        for (const auto& a : bench_algorithms) bench.algorithms.push_back(parse_algorithm(a));
      }
      return cmd_bench(bench);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
