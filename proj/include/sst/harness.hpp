#pragma once

#include "sst/tables.hpp"
#include "sst/workload.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sst {

struct ExperimentConfig {
  ProbeScheme scheme = ProbeScheme::Linear;
  bool sst = false;
  std::uint32_t k = 1; // ignored when sst is false
  WorkloadSpec workload{};
  std::uint32_t runs = 8;
  std::uint32_t warmup_runs = 1;

  void validate() const;
};

// Mean over the measured cycles of one configuration.
struct RunResult {
  ProbeScheme scheme = ProbeScheme::Linear;
  bool sst = false;
  std::uint32_t k = 0;
  std::uint32_t metadata_bits = 0;
  std::uint64_t m_requested = 0;
  std::uint64_t m_actual = 0;
  double load_factor = 0.0;
  std::uint32_t q_multiplier = 0;
  QueryMode mode = QueryMode::Uniform;
  std::uint64_t seed = 0;
  std::uint32_t runs = 0;

  double build_time_s = 0.0;
  double lookup_time_us_per_query = 0.0;
  double total_time_s = 0.0;

  double mean_probes = 0.0;
  double p95_probes = 0.0;
  double p99_probes = 0.0;
  double collisions_per_record = 0.0;
  double max_cluster = 0.0;

  // Probe accounting per cycle, not part of the CSV schema.
  double insert_probes = 0.0;     // winning insertion walks
  double evaluation_probes = 0.0; // candidate pricing scans
  double lookup_probes = 0.0;     // all query walks
};

struct RunOptions {
  // Skip warm-up and leave the timing columns at zero.
  bool structural_only = false;
};

RunResult run_single(const ExperimentConfig &config, RunOptions options = {});

struct GridOutcome {
  ExperimentConfig config;
  std::optional<RunResult> result;
  std::string error; // set when result is empty
};

enum class Parallelism { Serial, Parallel };

// Parallelism::Parallel only takes effect together with structural_only;
// timed configurations always run one at a time.
std::vector<GridOutcome> run_grid(std::span<const ExperimentConfig> grid, Parallelism parallelism,
                                  RunOptions options = {});

// Named experiment grids: main, scale, highq, amortization, querymode.
// The base config supplies seed, runs, warm-up and hotspot parameters.
std::vector<ExperimentConfig> preset_grid(std::string_view name, const ExperimentConfig &base);
std::span<const std::string_view> preset_names() noexcept;

struct SpeedupRow {
  RunResult baseline;
  RunResult shaped;
  double lookup_speedup = 0.0;
  double total_speedup = 0.0;
  double probe_speedup = 0.0;
  double p99_probe_speedup = 0.0;
};

struct SpeedupReport {
  std::vector<SpeedupRow> rows;
  std::vector<RunResult> unpaired; // SST rows without a baseline partner
};

SpeedupReport compute_speedups(std::span<const RunResult> results);

// CSV with the fixed results schema; reals use 6 significant digits.
void write_results_csv(std::ostream &out, std::span<const RunResult> rows);
void write_results_csv(const std::string &path, std::span<const RunResult> rows);
std::vector<RunResult> read_results_csv(std::istream &in);
std::vector<RunResult> read_results_csv(const std::string &path);

void write_speedups_csv(std::ostream &out, std::span<const SpeedupRow> rows);
void write_speedups_csv(const std::string &path, std::span<const SpeedupRow> rows);

std::string_view results_csv_header() noexcept;

} // namespace sst
