#include "sst/sst_index.h"

#include "sst/errors.hpp"
#include "sst/harness.hpp"
#include "sst/metrics.hpp"

#include <iostream>
#include <memory>
#include <new>
#include <string>
#include <vector>

struct sst_table {
  sst::Table table;
};

struct sst_results {
  std::vector<sst::RunResult> rows;
  std::vector<std::string> failures;
};

namespace {

thread_local std::string g_last_error;

sst_status fail(sst_status status, const char *message) {
  g_last_error = message;
  return status;
}

template <class F> sst_status guarded(F &&body) {
  try {
    body();
    g_last_error.clear();
    return SST_OK;
  } catch (const sst::DomainError &e) {
    return fail(SST_ERR_DOMAIN, e.what());
  } catch (const sst::CapacityError &e) {
    return fail(SST_ERR_CAPACITY, e.what());
  } catch (const sst::EmptyInputError &e) {
    return fail(SST_ERR_EMPTY_INPUT, e.what());
  } catch (const sst::IoError &e) {
    return fail(SST_ERR_IO, e.what());
  } catch (const sst::ParseError &e) {
    return fail(SST_ERR_PARSE, e.what());
  } catch (const sst::TimingError &e) {
    return fail(SST_ERR_TIMING, e.what());
  } catch (const std::bad_alloc &) {
    return fail(SST_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(SST_ERR_INTERNAL, e.what());
  }
}

#define SST_REQUIRE(cond)                                                                          \
  do {                                                                                             \
    if (!(cond))                                                                                   \
      return fail(SST_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);                           \
  } while (0)

bool valid_scheme(sst_scheme s) { return s >= SST_SCHEME_LINEAR && s <= SST_SCHEME_ROBINHOOD; }
bool valid_mode(sst_query_mode m) { return m == SST_QUERY_UNIFORM || m == SST_QUERY_HOTSPOT; }

sst::ExperimentConfig to_config(const sst_experiment_config &c) {
  sst::ExperimentConfig out;
  out.scheme = static_cast<sst::ProbeScheme>(c.scheme);
  out.sst = c.sst != 0;
  out.k = c.k;
  out.workload.m_requested = c.m_requested;
  out.workload.load_factor = c.load_factor;
  out.workload.query_multiplier = c.q_multiplier;
  out.workload.mode = static_cast<sst::QueryMode>(c.mode);
  out.workload.seed = c.seed;
  out.workload.hot_fraction = c.hot_fraction;
  out.workload.hot_weight = c.hot_weight;
  out.runs = c.runs;
  out.warmup_runs = c.warmup_runs;
  return out;
}

sst_run_result to_c(const sst::RunResult &r) {
  sst_run_result o{};
  o.scheme = static_cast<sst_scheme>(r.scheme);
  o.sst = r.sst ? 1 : 0;
  o.k = r.k;
  o.metadata_bits = r.metadata_bits;
  o.m_requested = r.m_requested;
  o.m_actual = r.m_actual;
  o.load_factor = r.load_factor;
  o.q_multiplier = r.q_multiplier;
  o.mode = static_cast<sst_query_mode>(r.mode);
  o.seed = r.seed;
  o.runs = r.runs;
  o.build_time_s = r.build_time_s;
  o.lookup_time_us_per_query = r.lookup_time_us_per_query;
  o.total_time_s = r.total_time_s;
  o.mean_probes = r.mean_probes;
  o.p95_probes = r.p95_probes;
  o.p99_probes = r.p99_probes;
  o.collisions_per_record = r.collisions_per_record;
  o.max_cluster = r.max_cluster;
  o.insert_probes = r.insert_probes;
  o.evaluation_probes = r.evaluation_probes;
  o.lookup_probes = r.lookup_probes;
  return o;
}

sst::RunResult from_c(const sst_run_result &o) {
  sst::RunResult r;
  r.scheme = static_cast<sst::ProbeScheme>(o.scheme);
  r.sst = o.sst != 0;
  r.k = o.k;
  r.metadata_bits = o.metadata_bits;
  r.m_requested = o.m_requested;
  r.m_actual = o.m_actual;
  r.load_factor = o.load_factor;
  r.q_multiplier = o.q_multiplier;
  r.mode = static_cast<sst::QueryMode>(o.mode);
  r.seed = o.seed;
  r.runs = o.runs;
  r.build_time_s = o.build_time_s;
  r.lookup_time_us_per_query = o.lookup_time_us_per_query;
  r.total_time_s = o.total_time_s;
  r.mean_probes = o.mean_probes;
  r.p95_probes = o.p95_probes;
  r.p99_probes = o.p99_probes;
  r.collisions_per_record = o.collisions_per_record;
  r.max_cluster = o.max_cluster;
  r.insert_probes = o.insert_probes;
  r.evaluation_probes = o.evaluation_probes;
  r.lookup_probes = o.lookup_probes;
  return r;
}

bool is_stdio(const char *path) { return path[0] == '-' && path[1] == '\0'; }

} // namespace

extern "C" {

const char *sst_status_string(sst_status status) {
  switch (status) {
  case SST_OK:
    return "ok";
  case SST_ERR_INVALID_ARGUMENT:
    return "invalid argument";
  case SST_ERR_DOMAIN:
    return "domain error";
  case SST_ERR_CAPACITY:
    return "capacity error";
  case SST_ERR_EMPTY_INPUT:
    return "empty input";
  case SST_ERR_IO:
    return "i/o error";
  case SST_ERR_PARSE:
    return "parse error";
  case SST_ERR_TIMING:
    return "timing error";
  case SST_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *sst_last_error(void) { return g_last_error.c_str(); }

sst_status sst_shape(uint64_t key, uint32_t tag, uint32_t k, uint64_t *out) {
  SST_REQUIRE(out);
  return guarded([&] { *out = sst::ShapingFamily(k).shape(key, sst::ShapingTag{tag}); });
}

sst_status sst_unshape(uint64_t shaped, uint32_t tag, uint32_t k, uint64_t *out) {
  SST_REQUIRE(out);
  return guarded([&] { *out = sst::ShapingFamily(k).unshape(shaped, sst::ShapingTag{tag}); });
}

uint32_t sst_metadata_bits(uint32_t k) { return sst::metadata_bits(k); }

double sst_analytic_collision_rate(double alpha, uint32_t k) {
  double rate = -1.0;
  if (guarded([&] { rate = sst::analytic_collision_rate(alpha, k); }) != SST_OK)
    return -1.0;
  return rate;
}

sst_status sst_table_create(uint64_t m_requested, sst_scheme scheme, uint32_t k, sst_table **out) {
  SST_REQUIRE(out);
  SST_REQUIRE(valid_scheme(scheme));
  *out = nullptr;
  return guarded([&] {
    const auto s = static_cast<sst::ProbeScheme>(scheme);
    if (k == 0)
      *out = new sst_table{sst::Table(m_requested, s)};
    else
      *out = new sst_table{sst::Table(m_requested, s, sst::ShapingFamily(k))};
  });
}

void sst_table_destroy(sst_table *table) { delete table; }

sst_status sst_table_insert(sst_table *table, uint64_t key, sst_insert_stats *out) {
  SST_REQUIRE(table);
  return guarded([&] {
    const sst::InsertStats s = table->table.insert(key);
    if (out)
      *out = sst_insert_stats{s.probes, s.collided ? 1 : 0, s.chosen_tag.index,
                              s.evaluation_probes};
  });
}

sst_status sst_table_lookup(const sst_table *table, uint64_t key, sst_lookup_result *out) {
  SST_REQUIRE(table);
  SST_REQUIRE(out);
  return guarded([&] {
    const sst::LookupResult r = table->table.lookup(key);
    *out = sst_lookup_result{r.found ? 1 : 0, r.probes, r.tag.index};
  });
}

sst_status sst_table_probe_cost(const sst_table *table, uint64_t stored, uint64_t *out) {
  SST_REQUIRE(table);
  SST_REQUIRE(out);
  return guarded([&] { *out = table->table.probe_cost(stored); });
}

uint64_t sst_table_capacity(const sst_table *table) { return table ? table->table.capacity() : 0; }

uint64_t sst_table_size(const sst_table *table) { return table ? table->table.size() : 0; }

sst_status sst_table_max_cluster(const sst_table *table, uint64_t *out) {
  SST_REQUIRE(table);
  SST_REQUIRE(out);
  return guarded([&] { *out = sst::max_cluster(table->table.occupancy()); });
}

void sst_experiment_config_init(sst_experiment_config *config) {
  if (!config)
    return;
  const sst::ExperimentConfig d;
  *config = sst_experiment_config{};
  config->scheme = static_cast<sst_scheme>(d.scheme);
  config->sst = d.sst ? 1 : 0;
  config->k = d.k;
  config->m_requested = d.workload.m_requested;
  config->load_factor = d.workload.load_factor;
  config->q_multiplier = d.workload.query_multiplier;
  config->mode = static_cast<sst_query_mode>(d.workload.mode);
  config->seed = d.workload.seed;
  config->hot_fraction = d.workload.hot_fraction;
  config->hot_weight = d.workload.hot_weight;
  config->runs = d.runs;
  config->warmup_runs = d.warmup_runs;
}

sst_status sst_run_single(const sst_experiment_config *config, int structural_only,
                          sst_run_result *out) {
  SST_REQUIRE(config);
  SST_REQUIRE(out);
  SST_REQUIRE(valid_scheme(config->scheme));
  SST_REQUIRE(valid_mode(config->mode));
  return guarded([&] {
    *out = to_c(sst::run_single(to_config(*config), sst::RunOptions{structural_only != 0}));
  });
}

sst_status sst_results_create(sst_results **out) {
  SST_REQUIRE(out);
  return guarded([&] { *out = new sst_results{}; });
}

void sst_results_destroy(sst_results *results) { delete results; }

size_t sst_results_size(const sst_results *results) { return results ? results->rows.size() : 0; }

sst_status sst_results_get(const sst_results *results, size_t index, sst_run_result *out) {
  SST_REQUIRE(results);
  SST_REQUIRE(out);
  SST_REQUIRE(index < results->rows.size());
  *out = to_c(results->rows[index]);
  return SST_OK;
}

sst_status sst_results_append(sst_results *results, const sst_run_result *row) {
  SST_REQUIRE(results);
  SST_REQUIRE(row);
  SST_REQUIRE(valid_scheme(row->scheme));
  SST_REQUIRE(valid_mode(row->mode));
  return guarded([&] { results->rows.push_back(from_c(*row)); });
}

size_t sst_results_failure_count(const sst_results *results) {
  return results ? results->failures.size() : 0;
}

const char *sst_results_failure(const sst_results *results, size_t index) {
  if (!results || index >= results->failures.size())
    return nullptr;
  return results->failures[index].c_str();
}

sst_status sst_run_grid(const char *preset, const sst_experiment_config *base, int structural_only,
                        sst_results **out) {
  SST_REQUIRE(preset);
  SST_REQUIRE(base);
  SST_REQUIRE(out);
  SST_REQUIRE(valid_scheme(base->scheme));
  SST_REQUIRE(valid_mode(base->mode));
  *out = nullptr;
  return guarded([&] {
    const auto grid = sst::preset_grid(preset, to_config(*base));
    const sst::RunOptions options{structural_only != 0};
    const auto outcomes = sst::run_grid(
        grid, structural_only ? sst::Parallelism::Parallel : sst::Parallelism::Serial, options);
    auto results = std::make_unique<sst_results>();
    for (const sst::GridOutcome &o : outcomes) {
      if (o.result) {
        results->rows.push_back(*o.result);
      } else {
        std::string msg(sst::to_string(o.config.scheme));
        msg += o.config.sst ? " sst=on k=" + std::to_string(o.config.k) : " sst=off";
        msg += " m=" + std::to_string(o.config.workload.m_requested) + ": " + o.error;
        results->failures.push_back(std::move(msg));
      }
    }
    *out = results.release();
  });
}

size_t sst_grid_preset_count(void) { return sst::preset_names().size(); }

const char *sst_grid_preset_name(size_t index) {
  const auto names = sst::preset_names();
  return index < names.size() ? names[index].data() : nullptr;
}

sst_status sst_results_write_csv(const sst_results *results, const char *path) {
  SST_REQUIRE(results);
  SST_REQUIRE(path);
  return guarded([&] {
    if (is_stdio(path)) {
      sst::write_results_csv(std::cout, results->rows);
      std::cout.flush();
    } else {
      sst::write_results_csv(std::string(path), results->rows);
    }
  });
}

sst_status sst_results_read_csv(const char *path, sst_results **out) {
  SST_REQUIRE(path);
  SST_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto results = std::make_unique<sst_results>();
    results->rows = is_stdio(path) ? sst::read_results_csv(std::cin)
                                   : sst::read_results_csv(std::string(path));
    *out = results.release();
  });
}

sst_status sst_speedups_write_csv(const sst_results *results, const char *path, size_t *unpaired) {
  SST_REQUIRE(results);
  SST_REQUIRE(path);
  return guarded([&] {
    const sst::SpeedupReport report = sst::compute_speedups(results->rows);
    if (unpaired)
      *unpaired = report.unpaired.size();
    if (is_stdio(path)) {
      sst::write_speedups_csv(std::cout, report.rows);
      std::cout.flush();
    } else {
      sst::write_speedups_csv(std::string(path), report.rows);
    }
  });
}

} // extern "C"
