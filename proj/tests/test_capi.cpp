#include "sst/sst_index.h"

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

TEST_CASE("shape through the C surface") {
  std::uint64_t v = 0;
  REQUIRE(sst_shape(0, 0, 1, &v) == SST_OK);
  CHECK(v == 0xE220A8397B1DCDAFULL);
  std::uint64_t back = 1;
  REQUIRE(sst_unshape(v, 0, 1, &back) == SST_OK);
  CHECK(back == 0);

  CHECK(sst_shape(0, 8, 8, &v) == SST_ERR_DOMAIN);
  CHECK(std::strlen(sst_last_error()) > 0);
  CHECK(sst_shape(0, 0, 0, &v) == SST_ERR_DOMAIN);
  CHECK(sst_shape(0, 0, 1, nullptr) == SST_ERR_INVALID_ARGUMENT);
  CHECK(sst_metadata_bits(8) == 3);
  CHECK(sst_analytic_collision_rate(0.95, 1) == doctest::Approx(0.475));
  CHECK(sst_analytic_collision_rate(2.0, 1) < 0.0);
}

TEST_CASE("table handle lifecycle") {
  sst_table *t = nullptr;
  REQUIRE(sst_table_create(5000, SST_SCHEME_ROBINHOOD, 4, &t) == SST_OK);
  CHECK(sst_table_capacity(t) == 5003);
  for (std::uint64_t key = 1; key <= 4000; ++key) {
    sst_insert_stats s{};
    REQUIRE(sst_table_insert(t, key * 7919, &s) == SST_OK);
    REQUIRE(s.chosen_tag < 4);
  }
  CHECK(sst_table_size(t) == 4000);
  sst_lookup_result r{};
  REQUIRE(sst_table_lookup(t, 7919, &r) == SST_OK);
  CHECK(r.found == 1);
  std::uint64_t reconstructed = 0, shaped = 0;
  REQUIRE(sst_shape(7919, r.tag, 4, &shaped) == SST_OK);
  REQUIRE(sst_unshape(shaped, r.tag, 4, &reconstructed) == SST_OK);
  CHECK(reconstructed == 7919);
  REQUIRE(sst_table_lookup(t, 3, &r) == SST_OK);
  CHECK(r.found == 0);
  std::uint64_t cluster = 0;
  REQUIRE(sst_table_max_cluster(t, &cluster) == SST_OK);
  CHECK(cluster >= 1);
  sst_table_destroy(t);
  sst_table_destroy(nullptr);

  CHECK(sst_table_create(10, static_cast<sst_scheme>(9), 0, &t) == SST_ERR_INVALID_ARGUMENT);
  CHECK(sst_table_create(0, SST_SCHEME_LINEAR, 0, &t) == SST_ERR_DOMAIN);
}

TEST_CASE("capacity errors surface as status codes") {
  sst_table *t = nullptr;
  REQUIRE(sst_table_create(2, SST_SCHEME_LINEAR, 0, &t) == SST_OK);
  REQUIRE(sst_table_insert(t, 1, nullptr) == SST_OK);
  REQUIRE(sst_table_insert(t, 2, nullptr) == SST_OK);
  CHECK(sst_table_insert(t, 3, nullptr) == SST_ERR_CAPACITY);
  std::uint64_t cost = 0;
  CHECK(sst_table_probe_cost(t, 3, &cost) == SST_ERR_CAPACITY);
  sst_table_destroy(t);
}

TEST_CASE("run, grid and csv through the C surface") {
  sst_experiment_config c;
  sst_experiment_config_init(&c);
  CHECK(c.runs == 8);
  CHECK(c.warmup_runs == 1);
  CHECK(c.m_requested == 5000);
  CHECK(c.hot_fraction == doctest::Approx(0.10));
  CHECK(c.hot_weight == doctest::Approx(0.90));

  c.m_requested = 500;
  c.runs = 1;
  c.q_multiplier = 2;
  sst_run_result row{};
  REQUIRE(sst_run_single(&c, 1, &row) == SST_OK);
  CHECK(row.m_actual == 503);
  CHECK(row.mean_probes >= 1.0);

  c.runs = 0;
  CHECK(sst_run_single(&c, 1, &row) == SST_ERR_DOMAIN);
  c.runs = 1;

  sst_results *grid = nullptr;
  CHECK(sst_run_grid("nope", &c, 1, &grid) == SST_ERR_DOMAIN);
  CHECK(grid == nullptr);
  REQUIRE(sst_run_grid("querymode", &c, 1, &grid) == SST_OK);
  CHECK(sst_results_size(grid) == 16);
  CHECK(sst_results_failure_count(grid) == 0);
  CHECK(sst_results_failure(grid, 0) == nullptr);

  const auto dir = std::filesystem::temp_directory_path();
  const std::string results_path = (dir / "sst_capi_results.csv").string();
  const std::string speedup_path = (dir / "sst_capi_speedups.csv").string();
  REQUIRE(sst_results_write_csv(grid, results_path.c_str()) == SST_OK);

  sst_results *loaded = nullptr;
  REQUIRE(sst_results_read_csv(results_path.c_str(), &loaded) == SST_OK);
  CHECK(sst_results_size(loaded) == 16);
  sst_run_result a{}, b{};
  REQUIRE(sst_results_get(grid, 3, &a) == SST_OK);
  REQUIRE(sst_results_get(loaded, 3, &b) == SST_OK);
  CHECK(a.scheme == b.scheme);
  CHECK(a.k == b.k);
  CHECK(a.p99_probes == b.p99_probes);
  CHECK(sst_results_get(loaded, 16, &b) == SST_ERR_INVALID_ARGUMENT);

  size_t unpaired = 99;
  REQUIRE(sst_speedups_write_csv(loaded, speedup_path.c_str(), &unpaired) == SST_OK);
  CHECK(unpaired == 0);
  std::ifstream in(speedup_path);
  int lines = 0;
  for (std::string line; std::getline(in, line);)
    ++lines;
  CHECK(lines == 9); // header + 8 paired rows

  sst_results *missing = nullptr;
  CHECK(sst_results_read_csv("/nonexistent-dir/x.csv", &missing) == SST_ERR_IO);
  CHECK(missing == nullptr);
  CHECK(sst_results_write_csv(grid, "/nonexistent-dir/x.csv") == SST_ERR_IO);

  sst_results *manual = nullptr;
  REQUIRE(sst_results_create(&manual) == SST_OK);
  REQUIRE(sst_results_append(manual, &row) == SST_OK);
  CHECK(sst_results_size(manual) == 1);

  sst_results_destroy(manual);
  sst_results_destroy(loaded);
  sst_results_destroy(grid);
  sst_results_destroy(nullptr);
  std::filesystem::remove(results_path);
  std::filesystem::remove(speedup_path);
}

TEST_CASE("preset names") {
  CHECK(sst_grid_preset_count() == 5);
  CHECK(std::string(sst_grid_preset_name(0)) == "main");
  CHECK(sst_grid_preset_name(5) == nullptr);
}
