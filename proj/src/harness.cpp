#include "sst/harness.hpp"

#include "sst/errors.hpp"
#include "sst/metrics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>
#include <tuple>

namespace sst {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kQueryChunk = 1 << 16;

double seconds_between(Clock::time_point start, Clock::time_point end) {
  if (end < start)
    throw TimingError("monotonic clock went backwards; run aborted");
  return std::chrono::duration<double>(end - start).count();
}

struct Cycle {
  double build_s = 0.0;
  double lookup_s = 0.0;
  double mean = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double collisions = 0.0;
  double max_cluster = 0.0;
  double insert_probes = 0.0;
  double evaluation_probes = 0.0;
  double lookup_probes = 0.0;
};

Table make_table(const ExperimentConfig &config) {
  if (config.sst)
    return Table(config.workload.m_requested, config.scheme, ShapingFamily(config.k));
  return Table(config.workload.m_requested, config.scheme);
}

Cycle run_cycle(const ExperimentConfig &config, std::uint64_t seed, bool timed) {
  WorkloadSpec spec = config.workload;
  spec.seed = seed;
  const std::vector<Key> keys = gen_keys(spec);
  Table table = make_table(config);
  Cycle out;

  std::uint64_t collided = 0;
  std::uint64_t insert_probes = 0;
  std::uint64_t evaluation_probes = 0;
  const auto build_start = timed ? Clock::now() : Clock::time_point{};
  for (const Key key : keys) {
    const InsertStats s = table.insert(key);
    collided += s.collided ? 1 : 0;
    insert_probes += s.probes;
    evaluation_probes += s.evaluation_probes;
  }
  if (timed)
    out.build_s = seconds_between(build_start, Clock::now());

  out.collisions =
      keys.empty() ? 0.0 : static_cast<double>(collided) / static_cast<double>(keys.size());
  out.max_cluster = static_cast<double>(max_cluster(table.occupancy()));
  out.insert_probes = static_cast<double>(insert_probes);
  out.evaluation_probes = static_cast<double>(evaluation_probes);
  if (keys.empty())
    return out;

  QueryStream queries(spec, keys);
  std::vector<Key> chunk(kQueryChunk);
  std::vector<std::uint64_t> probes(kQueryChunk);
  ProbeHistogram hist;
  std::uint64_t missing = 0;
  while (queries.remaining() > 0) {
    const std::size_t n = queries.fill(chunk);
    const auto start = timed ? Clock::now() : Clock::time_point{};
    for (std::size_t i = 0; i < n; ++i) {
      const LookupResult r = table.lookup(chunk[i]);
      probes[i] = r.probes;
      missing += r.found ? 0 : 1;
    }
    if (timed)
      out.lookup_s += seconds_between(start, Clock::now());
    for (std::size_t i = 0; i < n; ++i)
      hist.add(probes[i]);
  }
  if (missing != 0)
    throw Error("lookup failed for " + std::to_string(missing) + " stored keys");

  out.mean = hist.mean();
  out.p95 = static_cast<double>(hist.percentile(95));
  out.p99 = static_cast<double>(hist.percentile(99));
  out.lookup_probes = static_cast<double>(hist.sum());
  return out;
}

RunResult echo(const ExperimentConfig &config) {
  RunResult r;
  r.scheme = config.scheme;
  r.sst = config.sst;
  r.k = config.sst ? config.k : 0;
  r.metadata_bits = config.sst ? metadata_bits(config.k) : 0;
  r.m_requested = config.workload.m_requested;
  r.m_actual = next_prime(config.workload.m_requested);
  r.load_factor = config.workload.load_factor;
  r.q_multiplier = config.workload.query_multiplier;
  r.mode = config.workload.mode;
  r.seed = config.workload.seed;
  r.runs = config.runs;
  return r;
}

} // namespace

void ExperimentConfig::validate() const {
  workload.validate();
  if (runs < 1)
    throw DomainError("runs must be at least 1");
  if (sst && (k < 1 || k > ShapingFamily::kMaxOrder))
    throw DomainError("shaping order out of range: " + std::to_string(k));
}

RunResult run_single(const ExperimentConfig &config, RunOptions options) {
  config.validate();
  const bool timed = !options.structural_only;
  if (timed) {
    for (std::uint32_t w = 0; w < config.warmup_runs; ++w)
      (void)run_cycle(config, config.workload.seed, true);
  }

  Cycle sum;
  for (std::uint32_t c = 0; c < config.runs; ++c) {
    const Cycle cy = run_cycle(config, config.workload.seed + c, timed);
    sum.build_s += cy.build_s;
    sum.lookup_s += cy.lookup_s;
    sum.mean += cy.mean;
    sum.p95 += cy.p95;
    sum.p99 += cy.p99;
    sum.collisions += cy.collisions;
    sum.max_cluster += cy.max_cluster;
    sum.insert_probes += cy.insert_probes;
    sum.evaluation_probes += cy.evaluation_probes;
    sum.lookup_probes += cy.lookup_probes;
  }

  const double runs = config.runs;
  RunResult r = echo(config);
  const double q = static_cast<double>(config.workload.query_count());
  r.build_time_s = sum.build_s / runs;
  r.lookup_time_us_per_query = q > 0 ? sum.lookup_s / runs / q * 1e6 : 0.0;
  r.total_time_s = (sum.build_s + sum.lookup_s) / runs;
  r.mean_probes = sum.mean / runs;
  r.p95_probes = sum.p95 / runs;
  r.p99_probes = sum.p99 / runs;
  r.collisions_per_record = sum.collisions / runs;
  r.max_cluster = sum.max_cluster / runs;
  r.insert_probes = sum.insert_probes / runs;
  r.evaluation_probes = sum.evaluation_probes / runs;
  r.lookup_probes = sum.lookup_probes / runs;
  return r;
}

std::vector<GridOutcome> run_grid(std::span<const ExperimentConfig> grid, Parallelism parallelism,
                                  RunOptions options) {
  std::vector<GridOutcome> out(grid.size());
  const auto run_one = [&](std::size_t i) {
    out[i].config = grid[i];
    try {
      out[i].result = run_single(grid[i], options);
    } catch (const std::exception &e) {
      out[i].error = e.what();
    }
  };

  const bool parallel = parallelism == Parallelism::Parallel && options.structural_only;
  const std::size_t workers =
      parallel ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), grid.size())
               : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      run_one(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
        run_one(i);
    });
  }
  pool.clear(); // joins
  return out;
}

namespace {

constexpr std::array<std::string_view, 5> kPresets = {"main", "scale", "highq", "amortization",
                                                      "querymode"};

// SST off, then SST on for each order in ks.
void add_variants(std::vector<ExperimentConfig> &grid, ExperimentConfig cell,
                  std::initializer_list<std::uint32_t> ks) {
  cell.sst = false;
  cell.k = 1;
  grid.push_back(cell);
  for (std::uint32_t k : ks) {
    cell.sst = true;
    cell.k = k;
    grid.push_back(cell);
  }
}

} // namespace

std::span<const std::string_view> preset_names() noexcept { return kPresets; }

std::vector<ExperimentConfig> preset_grid(std::string_view name, const ExperimentConfig &base) {
  std::vector<ExperimentConfig> grid;
  ExperimentConfig cell = base;

  if (name == "main") {
    cell.workload.m_requested = 5000;
    for (ProbeScheme s : kAllSchemes)
      for (double alpha : {0.75, 0.85, 0.90, 0.95})
        for (std::uint32_t q : {1u, 20u, 50u})
          for (QueryMode mode : {QueryMode::Uniform, QueryMode::Hotspot}) {
            cell.scheme = s;
            cell.workload.load_factor = alpha;
            cell.workload.query_multiplier = q;
            cell.workload.mode = mode;
            add_variants(grid, cell, {2, 4, 8});
          }
  } else if (name == "scale") {
    cell.workload.mode = QueryMode::Uniform;
    cell.workload.query_multiplier = 50;
    for (std::uint64_t m : {5000u, 50000u, 500000u})
      for (double alpha : {0.90, 0.95})
        for (ProbeScheme s : kAllSchemes) {
          cell.scheme = s;
          cell.workload.m_requested = m;
          cell.workload.load_factor = alpha;
          add_variants(grid, cell, {8});
        }
  } else if (name == "highq") {
    cell.workload.mode = QueryMode::Uniform;
    cell.workload.load_factor = 0.95;
    for (std::uint64_t m : {5000u, 50000u, 500000u})
      for (std::uint32_t q : {50u, 200u})
        for (ProbeScheme s : kAllSchemes) {
          cell.scheme = s;
          cell.workload.m_requested = m;
          cell.workload.query_multiplier = q;
          add_variants(grid, cell, {8});
        }
  } else if (name == "amortization") {
    cell.workload.m_requested = 5000;
    cell.workload.load_factor = 0.95;
    cell.workload.mode = QueryMode::Uniform;
    for (std::uint32_t q : {1u, 20u, 50u})
      for (ProbeScheme s : kAllSchemes) {
        cell.scheme = s;
        cell.workload.query_multiplier = q;
        add_variants(grid, cell, {4});
      }
  } else if (name == "querymode") {
    cell.workload.m_requested = 5000;
    cell.workload.load_factor = 0.95;
    cell.workload.query_multiplier = 50;
    for (QueryMode mode : {QueryMode::Uniform, QueryMode::Hotspot})
      for (ProbeScheme s : kAllSchemes) {
        cell.scheme = s;
        cell.workload.mode = mode;
        add_variants(grid, cell, {4});
      }
  } else {
    throw DomainError("unknown grid preset: " + std::string(name));
  }
  return grid;
}

SpeedupReport compute_speedups(std::span<const RunResult> results) {
  using JoinKey = std::tuple<ProbeScheme, std::uint64_t, double, std::uint32_t, QueryMode, std::uint64_t>;
  const auto key_of = [](const RunResult &r) {
    return JoinKey{r.scheme, r.m_requested, r.load_factor, r.q_multiplier, r.mode, r.seed};
  };

  std::map<JoinKey, const RunResult *> baselines;
  for (const RunResult &r : results)
    if (!r.sst)
      baselines.emplace(key_of(r), &r);

  SpeedupReport report;
  for (const RunResult &r : results) {
    if (!r.sst)
      continue;
    const auto it = baselines.find(key_of(r));
    if (it == baselines.end()) {
      report.unpaired.push_back(r);
      continue;
    }
    const RunResult &base = *it->second;
    SpeedupRow row;
    row.baseline = base;
    row.shaped = r;
    row.lookup_speedup = base.lookup_time_us_per_query / r.lookup_time_us_per_query;
    row.total_speedup = base.total_time_s / r.total_time_s;
    row.probe_speedup = base.mean_probes / r.mean_probes;
    row.p99_probe_speedup = base.p99_probes / r.p99_probes;
    report.rows.push_back(row);
  }
  return report;
}

} // namespace sst
