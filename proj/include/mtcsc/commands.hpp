#pragma once

// The clean / inject / evaluate / bench workflows behind the command-line
// tool. Each returns a process exit code: 0 success, 2 usage or parse
// error, 1 internal error.

#include <filesystem>
#include <iostream>
#include <optional>

#include "mtcsc/adaptive.hpp"
#include "mtcsc/global.hpp"
#include "mtcsc/io.hpp"
#include "mtcsc/quality.hpp"
#include "mtcsc/streaming.hpp"
#include "mtcsc/synthetic.hpp"

namespace mtcsc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

enum class Algorithm { Global, Local, Cluster, Adaptive };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Global: return "global";
    case Algorithm::Local: return "local";
    case Algorithm::Cluster: return "cluster";
    case Algorithm::Adaptive: return "adaptive";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "global") return Algorithm::Global;
  if (s == "local") return Algorithm::Local;
  if (s == "cluster") return Algorithm::Cluster;
  if (s == "adaptive") return Algorithm::Adaptive;
  throw InputError("unknown algorithm '" + s + "' (expected global|local|cluster|adaptive)");
}

struct RunConfig {
  Algorithm algorithm = Algorithm::Cluster;
  double s_max = 1.0;
  double window = 5.0;
  AdaptiveParams adaptive;
  std::uint64_t seed = 0;
  double error_rate = 0.1;
  ErrorPattern pattern = ErrorPattern::Together;

  SpeedConstraint constraint() const { return SpeedConstraint(s_max, window); }
  void check() const {
    constraint();
    adaptive.check();
    if (!(error_rate >= 0.0 && error_rate <= 1.0))
      throw InputError("error rate must be in [0, 1]");
  }
};

struct CleanOutcome {
  RepairResult result;
  std::vector<ConstraintChange> trace;
};

inline CleanOutcome run_algorithm(const TimeSeries& ts, const RunConfig& cfg) {
  const SpeedConstraint c = cfg.constraint();
  switch (cfg.algorithm) {
    case Algorithm::Global: return {mtcsc_g(ts, c), {}};
    case Algorithm::Local: return {mtcsc_l(ts, c), {}};
    case Algorithm::Cluster: return {mtcsc_c(ts, c), {}};
    case Algorithm::Adaptive: {
      auto r = mtcsc_a_traced(ts, c, cfg.adaptive);
      return {std::move(r.result), std::move(r.constraint_trace)};
    }
  }
  throw std::logic_error("unreachable");
}

inline std::string csv_header() {
  return "algorithm,n,D,error_rate,pattern,seed,rmse_dirty,rmse_repaired,repair_distance,"
         "repair_number,elapsed_ms";
}

struct CsvRow {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t dimension = 0;
  std::string error_rate;
  std::string pattern;
  std::string seed;
  double rmse_dirty = 0.0;
  double rmse_repaired = 0.0;
  double repair_distance = 0.0;
  double repair_number = 0.0;
  double elapsed_ms = 0.0;

  std::string str() const {
    using io::format_number;
    return algorithm + "," + std::to_string(n) + "," + std::to_string(dimension) + "," +
           error_rate + "," + pattern + "," + seed + "," + format_number(rmse_dirty) + "," +
           format_number(rmse_repaired) + "," + format_number(repair_distance) + "," +
           format_number(repair_number) + "," + format_number(elapsed_ms);
  }
};

inline double to_ms(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1e6; }

namespace detail {

// Shared exception-to-exit-code mapping.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

inline void require_same_timestamps(const TimeSeries& a, const TimeSeries& b, const char* what) {
  if (a.size() != b.size() || a.dimension() != b.dimension())
    throw InputError(std::string(what) + ": files are not aligned (length or dimension differ)");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].timestamp != b[i].timestamp)
      throw InputError(std::string(what) + ": timestamps differ at data row " + std::to_string(i + 1));
}

}  // namespace detail

struct CleanArgs {
  std::string input;
  std::string output;
  std::string trace;  // optional constraint trace (adaptive only)
  RunConfig config;
};

inline int cmd_clean(const CleanArgs& args, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    args.config.check();
    const TimeSeries ts = io::read_series(args.input);
    require_valid(ts);
    CleanOutcome run = run_algorithm(ts, args.config);
    io::write_series(args.output, run.result.repaired);
    if (!args.trace.empty()) {
      std::ofstream t(args.trace, std::ios::binary);
      if (!t) throw InputError("cannot write '" + args.trace + "'");
      t << "timestamp,s_max\n";
      for (const auto& ch : run.trace)
        t << io::format_number(ch.timestamp) << ',' << io::format_number(ch.s_max) << '\n';
    }
    out << "algorithm: " << to_string(args.config.algorithm) << '\n'
        << "n: " << ts.size() << '\n'
        << "D: " << ts.dimension() << '\n'
        << "repair_count: " << run.result.repair_count << '\n'
        << "repair_distance: " << io::format_number(run.result.repair_distance) << '\n'
        << "elapsed_ms: " << io::format_number(to_ms(run.result.elapsed)) << '\n';
    return kExitOk;
  });
}

struct InjectArgs {
  std::string input;
  std::string output;
  std::string errors;  // defaults to <output stem>.errors.csv
  double rate = 0.1;
  ErrorPattern pattern = ErrorPattern::Together;
  std::uint64_t seed = 0;
};

inline std::string default_errors_path(const std::string& output) {
  std::filesystem::path p(output);
  p.replace_extension();
  return p.string() + ".errors.csv";
}

inline int cmd_inject(const InjectArgs& args, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const TimeSeries truth = io::read_series(args.input);
    const Injection inj = inject_errors(truth, ErrorSpec{args.rate, args.pattern, args.seed, {}});
    io::write_series(args.output, inj.dirty);
    const std::string errors_path = args.errors.empty() ? default_errors_path(args.output) : args.errors;
    std::ofstream e(errors_path, std::ios::binary);
    if (!e) throw InputError("cannot write '" + errors_path + "'");
    e << "row,dimension\n";
    for (const auto& ie : inj.errors) e << ie.index << ',' << ie.dimension + 1 << '\n';
    out << "points: " << truth.size() << '\n'
        << "corrupted_points: " << error_budget(args.rate, truth.size()) << '\n'
        << "corrupted_values: " << inj.errors.size() << '\n'
        << "errors_file: " << errors_path << '\n';
    return kExitOk;
  });
}

struct EvaluateArgs {
  std::string truth;
  std::string dirty;
  std::string repaired;
  std::string csv;  // optional machine-readable row
  std::string algorithm = "-";
  std::string error_rate = "-";
  std::string pattern = "-";
  std::string seed = "-";
};

inline int cmd_evaluate(const EvaluateArgs& args, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const TimeSeries truth = io::read_series(args.truth);
    const TimeSeries dirty = io::read_series(args.dirty);
    const TimeSeries repaired = io::read_series(args.repaired);
    detail::require_same_timestamps(truth, dirty, "evaluate (truth vs dirty)");
    detail::require_same_timestamps(truth, repaired, "evaluate (truth vs repaired)");

    CsvRow row{args.algorithm, truth.size(), truth.dimension(), args.error_rate, args.pattern,
               args.seed};
    row.rmse_dirty = rmse(dirty, truth);
    row.rmse_repaired = rmse(repaired, truth);
    row.repair_distance = repair_distance(repaired, dirty);
    const RepairNumber num = repair_number(repaired, dirty);
    row.repair_number = num.fraction;

    out << "rmse_dirty: " << io::format_number(row.rmse_dirty) << '\n'
        << "rmse_repaired: " << io::format_number(row.rmse_repaired) << '\n'
        << "repair_distance: " << io::format_number(row.repair_distance) << '\n'
        << "repair_number: " << io::format_number(row.repair_number) << '\n'
        << "repair_count: " << num.count << '\n';
    if (!args.csv.empty()) {
      std::ofstream c(args.csv, std::ios::binary);
      if (!c) throw InputError("cannot write '" + args.csv + "'");
      c << csv_header() << '\n' << row.str() << '\n';
    }
    return kExitOk;
  });
}

struct BenchArgs {
  std::vector<std::size_t> sizes{10000, 50000, 100000};
  std::vector<Algorithm> algorithms{Algorithm::Global, Algorithm::Local, Algorithm::Cluster,
                                    Algorithm::Adaptive};
  std::size_t dimension = 2;
  std::string output;  // stdout when empty
  RunConfig config;
};

/// One seeded walk per size (step bound = s_max), corrupted per the config,
/// then every algorithm is timed on it. Rows follow the evaluation CSV layout.
inline std::vector<CsvRow> bench_rows(const BenchArgs& args) {
  args.config.check();
  std::vector<CsvRow> rows;
  for (std::size_t n : args.sizes) {
    const TimeSeries truth =
        synthetic::bounded_walk(n, args.dimension, args.config.s_max, args.config.seed);
    const Injection inj = inject_errors(
        truth, ErrorSpec{args.config.error_rate, args.config.pattern, args.config.seed + 1, {}});
    for (Algorithm a : args.algorithms) {
      RunConfig cfg = args.config;
      cfg.algorithm = a;
      const CleanOutcome run = run_algorithm(inj.dirty, cfg);
      CsvRow row{to_string(a), n, args.dimension, io::format_number(cfg.error_rate),
                 mtcsc::to_string(cfg.pattern), std::to_string(cfg.seed)};
      row.rmse_dirty = rmse(inj.dirty, truth);
      row.rmse_repaired = rmse(run.result.repaired, truth);
      row.repair_distance = run.result.repair_distance;
      row.repair_number = static_cast<double>(run.result.repair_count) / static_cast<double>(n);
      row.elapsed_ms = to_ms(run.result.elapsed);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  return detail::guarded(err, [&] {
    const auto rows = bench_rows(args);
    std::ofstream file;
    if (!args.output.empty()) {
      file.open(args.output, std::ios::binary);
      if (!file) throw InputError("cannot write '" + args.output + "'");
    }
    std::ostream& dst = args.output.empty() ? out : file;
    dst << csv_header() << '\n';
    for (const auto& r : rows) dst << r.str() << '\n';
    return kExitOk;
  });
}

}  // namespace mtcsc::cli
