#pragma once

#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "royale/baselines.hpp"
#include "royale/bro.hpp"
#include "royale/mbro.hpp"
#include "royale/stats.hpp"

namespace royale {

// ---------------------------------------------------------------------------
// Numeric text round-trip. All result files use the shortest decimal string
// that parses back to the exact double, so reruns diff byte for byte and
// verification can compare exactly.

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

inline long long parse_int(std::string_view s) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return v;
}

inline std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Experiment configuration

struct ExperimentSpec {
  std::vector<Algorithm> algorithms;
  std::vector<FunctionId> functions;
  std::optional<int> dimension_override;
  int runs = 25;
  int pop_size = 100;
  int max_iter = 500;
  int damage_threshold = 3;
  std::uint64_t master_seed = 0;
  std::string output_path;
  bool emit_traces = false;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument(std::string(key) + ": expected a boolean, got '" +
                              std::string(value) + "'");
}

}  // namespace detail

/// Apply one key=value setting. Shared by the experiment-file parser and the
/// command-line overrides so both spell fields identically.
inline void apply_spec_key(ExperimentSpec& spec, std::string_view key, std::string_view value) {
  try {
    if (key == "algorithms") {
      spec.algorithms.clear();
      for (const std::string& token : detail::split_list(value))
        spec.algorithms.push_back(algorithm_from_string(token));
    } else if (key == "functions") {
      spec.functions.clear();
      for (const std::string& token : detail::split_list(value))
        spec.functions.push_back(function_from_string(token));
    } else if (key == "dimension_override") {
      spec.dimension_override = static_cast<int>(parse_int(value));
    } else if (key == "runs") {
      spec.runs = static_cast<int>(parse_int(value));
    } else if (key == "pop_size") {
      spec.pop_size = static_cast<int>(parse_int(value));
    } else if (key == "max_iter") {
      spec.max_iter = static_cast<int>(parse_int(value));
    } else if (key == "damage_threshold") {
      spec.damage_threshold = static_cast<int>(parse_int(value));
    } else if (key == "master_seed") {
      spec.master_seed = parse_u64(value);
    } else if (key == "output_path") {
      spec.output_path = detail::trim(value);
    } else if (key == "emit_traces") {
      spec.emit_traces = detail::parse_bool(key, value);
    } else {
      throw std::invalid_argument("unknown experiment key '" + std::string(key) + "'");
    }
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    // Prefix the offending field unless the message already names it.
    if (what.rfind(std::string(key), 0) == 0 || what.rfind("unknown experiment key", 0) == 0)
      throw;
    throw std::invalid_argument(std::string(key) + ": " + what);
  }
}

/// Flat key = value file; '#' starts a comment, blank lines are ignored.
inline ExperimentSpec parse_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read experiment file '" + path.string() + "'");
  ExperimentSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    apply_spec_key(spec, detail::trim(stripped.substr(0, eq)), detail::trim(stripped.substr(eq + 1)));
  }
  return spec;
}

/// Check every field and normalize the algorithm/function sets into their
/// canonical deterministic order. Errors name the offending field.
inline void validate_spec(ExperimentSpec& spec, bool require_output = true) {
  if (spec.algorithms.empty())
    throw std::invalid_argument("algorithms: at least one algorithm is required");
  if (spec.functions.empty())
    throw std::invalid_argument("functions: at least one function is required");
  if (spec.runs < 1) throw std::invalid_argument("runs: must be at least 1");
  if (spec.pop_size < 2) throw std::invalid_argument("pop_size: must be at least 2");
  if (spec.max_iter < 1) throw std::invalid_argument("max_iter: must be at least 1");
  if (spec.damage_threshold < 1)
    throw std::invalid_argument("damage_threshold: must be at least 1");
  if (require_output && spec.output_path.empty())
    throw std::invalid_argument("output_path: required");
  std::sort(spec.algorithms.begin(), spec.algorithms.end());
  spec.algorithms.erase(std::unique(spec.algorithms.begin(), spec.algorithms.end()),
                        spec.algorithms.end());
  std::sort(spec.functions.begin(), spec.functions.end());
  spec.functions.erase(std::unique(spec.functions.begin(), spec.functions.end()),
                       spec.functions.end());
  if (spec.dimension_override) {
    if (*spec.dimension_override < 1)
      throw std::invalid_argument("dimension_override: must be at least 1");
    for (FunctionId fn : spec.functions)
      if (static_cast<int>(fn) >= 14)
        throw std::invalid_argument("dimension_override: " + to_string(fn) +
                                    " has a fixed dimension");
  }
  // Surface per-function constraints (e.g. minimum dimension) up front.
  for (FunctionId fn : spec.functions) make_problem(fn, spec.dimension_override);
}

// ---------------------------------------------------------------------------
// Execution

template <UniformSource R>
RunResult run_algorithm(Algorithm algorithm, const BenchmarkProblem& problem,
                        const OptimizerConfig& config, R& rng) {
  switch (algorithm) {
    case Algorithm::BRO: return bro_run(problem, config, rng);
    case Algorithm::MBRO: return mbro_run(problem, config, rng);
    case Algorithm::PSO: return pso_run(problem, config, rng);
    case Algorithm::RANDOM: return random_search_run(problem, config, rng);
  }
  throw std::invalid_argument("run_algorithm: bad Algorithm value");
}

namespace detail {

/// Run fn(0..count-1) on a small worker pool. Indexed results keep output
/// ordering deterministic regardless of completion order.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (count == 0) return;
  if (workers == 0) workers = 1;
  if (workers > count) workers = static_cast<unsigned>(count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace detail

struct PairAggregate {
  Algorithm algorithm{};
  FunctionId function{};
  int dimension = 0;
  AggregateStats stats;
};

struct ExperimentReport {
  std::vector<PairAggregate> aggregates;
  std::filesystem::path runs_file;
  std::filesystem::path aggregate_file;
  std::vector<std::filesystem::path> trace_files;
};

inline constexpr const char* kRunsHeader =
    "algorithm,function,dimension,run_index,seed,best_fitness,elapsed_seconds";
inline constexpr const char* kAggregateHeader =
    "algorithm,function,dimension,n_runs,mean,std,median,best,worst,mean_elapsed_seconds";
inline constexpr const char* kTraceHeader = "iteration,best_so_far";

/// Execute every requested (algorithm, function) pair for `runs`
/// repetitions and persist runs.csv, aggregate.csv and optional per-run
/// trace files under output_path. Rows appear in (algorithm, function,
/// run_index) order whatever the completion order of the worker pool.
inline ExperimentReport run_experiment(ExperimentSpec spec) {
  validate_spec(spec);

  struct Task {
    Algorithm algorithm;
    const BenchmarkProblem* problem;
    int run_index;
    std::uint64_t seed;
  };
  std::vector<BenchmarkProblem> problems;
  problems.reserve(spec.functions.size());
  for (FunctionId fn : spec.functions) problems.push_back(make_problem(fn, spec.dimension_override));

  std::vector<Task> tasks;
  tasks.reserve(spec.algorithms.size() * problems.size() * static_cast<std::size_t>(spec.runs));
  for (Algorithm algorithm : spec.algorithms)
    for (const BenchmarkProblem& problem : problems)
      for (int r = 0; r < spec.runs; ++r)
        tasks.push_back({algorithm, &problem,
                         r, derive_seed(spec.master_seed, to_string(algorithm),
                                        to_string(problem.id), static_cast<std::uint32_t>(r))});

  std::vector<RunResult> results(tasks.size());
  detail::parallel_for(tasks.size(), std::thread::hardware_concurrency(), [&](std::size_t i) {
    const Task& task = tasks[i];
    OptimizerConfig config;
    config.pop_size = spec.pop_size;
    config.max_iter = spec.max_iter;
    config.damage_threshold = spec.damage_threshold;
    config.seed = task.seed;
    config.algorithm = task.algorithm;
    RandomStream rng(task.seed);
    results[i] = run_algorithm(task.algorithm, *task.problem, config, rng);
  });

  const std::filesystem::path out_dir(spec.output_path);
  std::filesystem::create_directories(out_dir);

  ExperimentReport report;
  report.runs_file = out_dir / "runs.csv";
  report.aggregate_file = out_dir / "aggregate.csv";
  {
    std::ofstream out = detail::open_for_write(report.runs_file);
    out << kRunsHeader << '\n';
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const Task& task = tasks[i];
      out << to_string(task.algorithm) << ',' << to_string(task.problem->id) << ','
          << task.problem->dimension << ',' << task.run_index << ',' << task.seed << ','
          << format_double(results[i].best_fitness) << ','
          << format_double(results[i].elapsed_seconds) << '\n';
    }
    detail::finish_write(out, report.runs_file);
  }
  {
    std::ofstream out = detail::open_for_write(report.aggregate_file);
    out << kAggregateHeader << '\n';
    std::size_t offset = 0;
    for (Algorithm algorithm : spec.algorithms) {
      for (const BenchmarkProblem& problem : problems) {
        const std::span<const RunResult> batch(results.data() + offset,
                                               static_cast<std::size_t>(spec.runs));
        offset += static_cast<std::size_t>(spec.runs);
        const AggregateStats stats = aggregate(batch);
        report.aggregates.push_back({algorithm, problem.id, problem.dimension, stats});
        out << to_string(algorithm) << ',' << to_string(problem.id) << ',' << problem.dimension
            << ',' << stats.n_runs << ',' << format_double(stats.mean) << ','
            << format_double(stats.std_dev) << ',' << format_double(stats.median) << ','
            << format_double(stats.best) << ',' << format_double(stats.worst) << ','
            << format_double(stats.mean_elapsed_seconds) << '\n';
      }
    }
    detail::finish_write(out, report.aggregate_file);
  }
  if (spec.emit_traces) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const Task& task = tasks[i];
      const std::filesystem::path path =
          out_dir / ("trace_" + to_string(task.algorithm) + "_" + to_string(task.problem->id) +
                     "_run" + std::to_string(task.run_index) + ".csv");
      std::ofstream out = detail::open_for_write(path);
      out << kTraceHeader << '\n';
      const std::vector<double>& trace = results[i].convergence_trace;
      for (std::size_t t = 0; t < trace.size(); ++t)
        out << (t + 1) << ',' << format_double(trace[t]) << '\n';
      detail::finish_write(out, path);
      report.trace_files.push_back(path);
    }
  }
  return report;
}

/// Machine-readable mirror of the benchmark catalog.
inline void emit_catalog(const std::filesystem::path& path) {
  std::ofstream out = detail::open_for_write(path);
  out << "id,name,dimension,lower,upper,shift,known_best\n";
  for (const BenchmarkProblem& p : catalog()) {
    out << to_string(p.id) << ',' << p.name << ',' << p.dimension << ',' << format_double(p.lower)
        << ',' << format_double(p.upper) << ',';
    if (!p.shift.empty()) out << format_double(p.shift.front());  // shifts are uniform
    out << ',';
    if (p.known_best) out << format_double(*p.known_best);
    out << '\n';
  }
  detail::finish_write(out, path);
}

// ---------------------------------------------------------------------------
// Verification: recompute aggregate.csv from runs.csv and compare exactly
// (exact comparison is sound because all numbers round-trip through text).

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::exchange(cur, {}));
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                                      const char* expected_header,
                                                      std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' is empty");
  if (line != expected_header)
    throw std::runtime_error("'" + path.string() + "' has an unexpected header");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row = split_csv_row(line);
    if (row.size() != columns)
      throw std::runtime_error("'" + path.string() + "' row has " + std::to_string(row.size()) +
                               " columns, expected " + std::to_string(columns));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// Cross-check a results directory. Returns human-readable problems; empty
/// means the aggregate file matches a recomputation from the per-run file.
inline std::vector<std::string> verify_results(const std::filesystem::path& results_dir) {
  std::vector<std::string> issues;
  const auto runs_rows = detail::read_csv(results_dir / "runs.csv", kRunsHeader, 7);
  const auto agg_rows = detail::read_csv(results_dir / "aggregate.csv", kAggregateHeader, 10);

  struct Batch {
    int dimension = 0;
    std::vector<RunResult> runs;
  };
  std::vector<std::pair<std::string, Batch>> batches;  // key = "ALGO,fn", file order
  for (const auto& row : runs_rows) {
    const std::string key = row[0] + "," + row[1];
    auto it = std::find_if(batches.begin(), batches.end(),
                           [&](const auto& b) { return b.first == key; });
    if (it == batches.end()) {
      batches.push_back({key, {}});
      it = std::prev(batches.end());
      it->second.dimension = static_cast<int>(parse_int(row[2]));
    } else if (it->second.dimension != parse_int(row[2])) {
      issues.push_back(key + ": inconsistent dimension across runs");
    }
    RunResult r;
    r.best_fitness = parse_double(row[5]);
    r.elapsed_seconds = parse_double(row[6]);
    it->second.runs.push_back(std::move(r));
  }

  std::size_t matched = 0;
  for (const auto& row : agg_rows) {
    const std::string key = row[0] + "," + row[1];
    const auto it = std::find_if(batches.begin(), batches.end(),
                                 [&](const auto& b) { return b.first == key; });
    if (it == batches.end()) {
      issues.push_back(key + ": aggregate row has no matching runs");
      continue;
    }
    ++matched;
    const Batch& batch = it->second;
    const AggregateStats stats = aggregate(batch.runs);
    auto check = [&](const char* field, double expected, const std::string& cell) {
      if (parse_double(cell) != expected)
        issues.push_back(key + ": " + field + " is " + cell + ", recomputed " +
                         format_double(expected));
    };
    if (parse_int(row[2]) != batch.dimension) issues.push_back(key + ": dimension mismatch");
    if (parse_int(row[3]) != static_cast<long long>(batch.runs.size()))
      issues.push_back(key + ": n_runs is " + row[3] + ", found " +
                       std::to_string(batch.runs.size()) + " runs");
    check("mean", stats.mean, row[4]);
    check("std", stats.std_dev, row[5]);
    check("median", stats.median, row[6]);
    check("best", stats.best, row[7]);
    check("worst", stats.worst, row[8]);
    check("mean_elapsed_seconds", stats.mean_elapsed_seconds, row[9]);
  }
  if (matched != batches.size())
    issues.push_back("runs.csv contains batches missing from aggregate.csv");
  return issues;
}

}  // namespace royale
