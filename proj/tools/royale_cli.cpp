// Command-line driver: run experiments, dump the benchmark catalog, verify
// result directories, list what is available.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <royale.hpp>

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ',';
    out += p;
  }
  return out;
}

void print_report(const royale::ExperimentReport& report) {
  std::printf("%-7s %-4s %5s %5s %14s %14s %14s %14s %14s\n", "algo", "fn", "dim", "runs", "mean",
              "std", "median", "best", "worst");
  for (const royale::PairAggregate& row : report.aggregates) {
    const royale::AggregateStats& s = row.stats;
    std::printf("%-7s %-4s %5d %5d %14.7g %14.7g %14.7g %14.7g %14.7g\n",
                royale::to_string(row.algorithm).c_str(), royale::to_string(row.function).c_str(),
                row.dimension, s.n_runs, s.mean, s.std_dev, s.median, s.best, s.worst);
  }
  std::printf("\nwrote %s\nwrote %s\n", report.runs_file.string().c_str(),
              report.aggregate_file.string().c_str());
  if (!report.trace_files.empty())
    std::printf("wrote %zu trace files\n", report.trace_files.size());
}

int do_list() {
  std::printf("algorithms: BRO MBRO PSO RANDOM\n\nfunctions:\n");
  for (const royale::BenchmarkProblem& p : royale::catalog()) {
    std::printf("  %-4s %-24s dim %2d  range [%g, %g]", royale::to_string(p.id).c_str(),
                p.name.c_str(), p.dimension, p.lower, p.upper);
    if (!p.shift.empty()) std::printf("  shift %g", p.shift.front());
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Battle-royale metaheuristic benchmark harness"};
  app.require_subcommand(1);

  // run
  std::string spec_path;
  std::vector<std::string> algo_override, fn_override;
  int runs_override = 0, iters_override = 0, pop_override = 0;
  std::uint64_t seed_override = 0;
  std::string out_override;
  bool traces_override = false;
  CLI::App* run = app.add_subcommand("run", "Execute the experiment described by a spec file");
  run->add_option("--spec", spec_path, "Experiment file (key = value lines)")->required();
  run->add_option("--algo", algo_override, "Override algorithm set (BRO MBRO PSO RANDOM)");
  run->add_option("--fn", fn_override, "Override function set (f1..f19)");
  CLI::Option* opt_runs = run->add_option("--runs", runs_override, "Override runs per pair");
  CLI::Option* opt_iters = run->add_option("--iters", iters_override, "Override iteration count");
  CLI::Option* opt_pop = run->add_option("--pop", pop_override, "Override population size");
  CLI::Option* opt_seed = run->add_option("--seed", seed_override, "Override master seed");
  run->add_option("--out", out_override, "Override output directory");
  run->add_flag("--traces", traces_override, "Emit per-run convergence traces");

  // catalog
  std::string catalog_out;
  CLI::App* cat = app.add_subcommand("catalog", "Write the benchmark catalog as delimited text");
  cat->add_option("--out", catalog_out, "Destination file")->required();

  // verify
  std::string results_dir;
  CLI::App* verify = app.add_subcommand("verify", "Recompute aggregates from a results directory");
  verify->add_option("--results", results_dir, "Directory holding runs.csv and aggregate.csv")
      ->required();

  // list
  app.add_subcommand("list", "List available algorithms and benchmark functions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      royale::ExperimentSpec spec = royale::parse_spec_file(spec_path);
      if (!algo_override.empty()) royale::apply_spec_key(spec, "algorithms", join(algo_override));
      if (!fn_override.empty()) royale::apply_spec_key(spec, "functions", join(fn_override));
      if (*opt_runs) spec.runs = runs_override;
      if (*opt_iters) spec.max_iter = iters_override;
      if (*opt_pop) spec.pop_size = pop_override;
      if (*opt_seed) spec.master_seed = seed_override;
      if (!out_override.empty()) spec.output_path = out_override;
      if (traces_override) spec.emit_traces = true;
      print_report(royale::run_experiment(std::move(spec)));
      return 0;
    }
    if (cat->parsed()) {
      royale::emit_catalog(catalog_out);
      std::printf("wrote %s\n", catalog_out.c_str());
      return 0;
    }
    if (verify->parsed()) {
      const std::vector<std::string> issues = royale::verify_results(results_dir);
      if (issues.empty()) {
        std::printf("%s: aggregates match recomputation\n", results_dir.c_str());
        return 0;
      }
      for (const std::string& issue : issues) std::printf("%s\n", issue.c_str());
      std::fprintf(stderr, "error: verification failed with %zu issue(s)\n", issues.size());
      return 1;
    }
    return do_list();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
