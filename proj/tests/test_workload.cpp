#include "sst/errors.hpp"
#include "sst/workload.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

using namespace sst;

TEST_CASE("key stream golden triple") {
  WorkloadSpec spec;
  spec.m_requested = 3;
  spec.load_factor = 1.0;
  spec.seed = 1;
  const auto keys = gen_keys(spec);
  REQUIRE(keys.size() == 3);
  // golden_values.py
  CHECK(keys[0] == 0x5692161D100B05E5ULL);
  CHECK(keys[1] == 0x910A2DEC89025CC1ULL);
  CHECK(keys[2] == 0xBEEB8DA1658EEC67ULL);
}

TEST_CASE("key counts") {
  WorkloadSpec spec;
  spec.m_requested = 5000;
  for (auto [alpha, n] : {std::pair{0.75, 3750u}, {0.85, 4250u}, {0.90, 4500u}, {0.95, 4750u}}) {
    spec.load_factor = alpha;
    CHECK(spec.key_count() == n);
  }
  spec.m_requested = 5;
  spec.load_factor = 0.1;
  CHECK(spec.key_count() == 0);
  CHECK(gen_keys(spec).empty());
}

TEST_CASE("keys are deterministic and distinct") {
  WorkloadSpec spec;
  spec.m_requested = 50000;
  spec.seed = 77;
  const auto a = gen_keys(spec);
  const auto b = gen_keys(spec);
  CHECK(a == b);
  CHECK(std::unordered_set<Key>(a.begin(), a.end()).size() == a.size());
  spec.seed = 78;
  CHECK(gen_keys(spec) != a);
}

TEST_CASE("uniform queries index keys by the masked-seed stream") {
  WorkloadSpec spec;
  spec.m_requested = 7;
  spec.load_factor = 1.0;
  spec.seed = 1;
  spec.query_multiplier = 1;
  const auto keys = gen_keys(spec);
  const auto q = gen_queries(spec, keys);
  REQUIRE(q.size() == 7);
  CHECK(q[0] == keys[0x3C8D5732B5E55D16ULL % 7]);
  CHECK(q[1] == keys[0x911356EC9794C104ULL % 7]);
  CHECK(q[2] == keys[0x0E4E87946858A2EBULL % 7]);
}

TEST_CASE("single key, single query") {
  WorkloadSpec spec;
  spec.m_requested = 1;
  spec.load_factor = 1.0;
  const auto keys = gen_keys(spec);
  REQUIRE(keys.size() == 1);
  const auto q = gen_queries(spec, keys);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == keys[0]);
  CHECK_THROWS_AS(gen_queries(spec, std::vector<Key>{}), EmptyInputError);
}

TEST_CASE("uniform query frequencies stay near the mean") {
  WorkloadSpec spec;
  spec.m_requested = 1000;
  spec.load_factor = 1.0;
  spec.query_multiplier = 1000;
  const auto keys = gen_keys(spec);
  const auto q = gen_queries(spec, keys);
  REQUIRE(q.size() == 1000000);
  std::unordered_map<Key, std::uint64_t> freq;
  for (Key k : q)
    ++freq[k];
  CHECK(freq.size() == keys.size());
  for (auto [k, c] : freq) {
    REQUIRE(c <= 5000);
    REQUIRE(c >= 200);
  }
}

TEST_CASE("hotspot sends about 90% of queries to the first 10% of keys") {
  WorkloadSpec spec;
  spec.m_requested = 10000;
  spec.load_factor = 1.0;
  spec.query_multiplier = 100;
  spec.mode = QueryMode::Hotspot;
  const auto keys = gen_keys(spec);
  const std::unordered_set<Key> hot(keys.begin(), keys.begin() + 1000);
  const std::unordered_set<Key> all(keys.begin(), keys.end());
  QueryStream stream(spec, keys);
  std::uint64_t hot_hits = 0, n = 0;
  while (stream.remaining() > 0) {
    const Key k = stream.next();
    REQUIRE(all.count(k) == 1);
    hot_hits += hot.count(k);
    ++n;
  }
  CHECK(n == 1000000);
  CHECK(static_cast<double>(hot_hits) / static_cast<double>(n) == doctest::Approx(0.90).epsilon(0.011));
}

TEST_CASE("query streams are reproducible and closed over the key set") {
  for (QueryMode mode : {QueryMode::Uniform, QueryMode::Hotspot}) {
    WorkloadSpec spec;
    spec.m_requested = 2000;
    spec.load_factor = 0.9;
    spec.query_multiplier = 20;
    spec.mode = mode;
    const auto keys = gen_keys(spec);
    const auto a = gen_queries(spec, keys);
    CHECK(a == gen_queries(spec, keys));
    CHECK(a.size() == spec.query_count());
    const std::set<Key> set(keys.begin(), keys.end());
    CHECK(std::all_of(a.begin(), a.end(), [&](Key k) { return set.count(k) == 1; }));
  }
}

TEST_CASE("spec validation") {
  WorkloadSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.load_factor = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.load_factor = 1.2;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = WorkloadSpec{};
  spec.query_multiplier = 0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = WorkloadSpec{};
  spec.hot_fraction = 1.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = WorkloadSpec{};
  spec.hot_weight = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}
