// sstbench: command-line front end for the shaped hash-index benchmark.
//
//   sstbench run --scheme linear --sst on --k 8 --load-factor 0.95 --qmult 50
//   sstbench grid main --structural-only --out main.csv
//   sstbench speedup main.csv --out speedups.csv

#include "sst/sst_index.h"

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <memory>
#include <string>

namespace {

struct ResultsDeleter {
  void operator()(sst_results *r) const { sst_results_destroy(r); }
};
using ResultsPtr = std::unique_ptr<sst_results, ResultsDeleter>;

int report(sst_status status, const char *what) {
  std::fprintf(stderr, "sstbench: %s: %s (%s)\n", what, sst_status_string(status), sst_last_error());
  return 1;
}

const std::map<std::string, sst_scheme> kSchemes = {{"linear", SST_SCHEME_LINEAR},
                                                    {"quadratic", SST_SCHEME_QUADRATIC},
                                                    {"double", SST_SCHEME_DOUBLE},
                                                    {"robinhood", SST_SCHEME_ROBINHOOD}};
const std::map<std::string, sst_query_mode> kModes = {{"uniform", SST_QUERY_UNIFORM},
                                                      {"hotspot", SST_QUERY_HOTSPOT}};
const std::map<std::string, int> kOnOff = {{"on", 1}, {"off", 0}};

struct CommonOptions {
  sst_experiment_config config{};
  std::string out = "-";
  bool structural_only = false;
};

void add_run_options(CLI::App *app, CommonOptions &o) {
  app->add_option("--seed", o.config.seed, "Base seed; cycle c uses seed + c");
  app->add_option("--runs", o.config.runs, "Measured cycles per configuration")
      ->check(CLI::PositiveNumber);
  app->add_option("--warmup", o.config.warmup_runs, "Unmeasured warm-up cycles");
  app->add_option("--hot-fraction", o.config.hot_fraction, "Hotspot: fraction of keys that are hot")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--hot-weight", o.config.hot_weight, "Hotspot: fraction of queries sent to hot keys")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--out", o.out, "Output CSV path ('-' for stdout)");
  app->add_flag("--structural-only", o.structural_only,
                "Skip timing (timing columns are 0) and run grid cells in parallel");
}

int write_failures(const sst_results *results) {
  const size_t failures = sst_results_failure_count(results);
  for (size_t i = 0; i < failures; ++i)
    std::fprintf(stderr, "sstbench: row aborted: %s\n", sst_results_failure(results, i));
  return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Shaped open-addressing hash index benchmark"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  sst_experiment_config_init(&run_opts.config);
  auto *run = app.add_subcommand("run", "Run a single configuration");
  run->add_option("--scheme", run_opts.config.scheme, "Probe scheme")
      ->transform(CLI::CheckedTransformer(kSchemes, CLI::ignore_case));
  run->add_option("--sst", run_opts.config.sst, "Enable key shaping")
      ->transform(CLI::CheckedTransformer(kOnOff, CLI::ignore_case));
  run->add_option("--k", run_opts.config.k, "Shaping order")->check(CLI::IsMember({1u, 2u, 4u, 8u}));
  run->add_option("--m", run_opts.config.m_requested, "Requested table size")
      ->check(CLI::PositiveNumber);
  run->add_option("--load-factor", run_opts.config.load_factor, "Load factor in (0, 1]");
  run->add_option("--qmult", run_opts.config.q_multiplier, "Queries per stored key")
      ->check(CLI::PositiveNumber);
  run->add_option("--mode", run_opts.config.mode, "Query mode")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  add_run_options(run, run_opts);

  CommonOptions grid_opts;
  sst_experiment_config_init(&grid_opts.config);
  std::string preset;
  auto *grid = app.add_subcommand("grid", "Run a named experiment grid");
  std::vector<std::string> preset_names;
  for (size_t i = 0; i < sst_grid_preset_count(); ++i)
    preset_names.emplace_back(sst_grid_preset_name(i));
  grid->add_option("preset", preset, "Grid preset")->required()->check(CLI::IsMember(preset_names));
  add_run_options(grid, grid_opts);

  std::string speedup_in;
  std::string speedup_out = "-";
  auto *speedup = app.add_subcommand("speedup", "Join SST rows of a results CSV against baselines");
  speedup->add_option("results", speedup_in, "Results CSV ('-' for stdin)")->required();
  speedup->add_option("--out", speedup_out, "Output CSV path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    sst_run_result row{};
    if (sst_status s = sst_run_single(&run_opts.config, run_opts.structural_only, &row); s != SST_OK)
      return report(s, "run");
    sst_results *raw = nullptr;
    if (sst_status s = sst_results_create(&raw); s != SST_OK)
      return report(s, "run");
    ResultsPtr results(raw);
    sst_results_append(results.get(), &row);
    if (sst_status s = sst_results_write_csv(results.get(), run_opts.out.c_str()); s != SST_OK)
      return report(s, "write");
    return 0;
  }

  if (*grid) {
    sst_results *raw = nullptr;
    if (sst_status s = sst_run_grid(preset.c_str(), &grid_opts.config, grid_opts.structural_only, &raw);
        s != SST_OK)
      return report(s, "grid");
    ResultsPtr results(raw);
    if (sst_status s = sst_results_write_csv(results.get(), grid_opts.out.c_str()); s != SST_OK)
      return report(s, "write");
    return write_failures(results.get());
  }

  sst_results *raw = nullptr;
  if (sst_status s = sst_results_read_csv(speedup_in.c_str(), &raw); s != SST_OK)
    return report(s, "read");
  ResultsPtr results(raw);
  size_t unpaired = 0;
  if (sst_status s = sst_speedups_write_csv(results.get(), speedup_out.c_str(), &unpaired); s != SST_OK)
    return report(s, "speedup");
  if (unpaired != 0)
    std::fprintf(stderr, "sstbench: %zu SST rows had no SST-off partner and were skipped\n", unpaired);
  return 0;
}
