#include "sst/errors.hpp"
#include "sst/keyspace.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

using namespace sst;

// Golden values from tests/oracles/golden_values.py.
constexpr std::uint64_t kG0 = 0xE220A8397B1DCDAFULL;

TEST_CASE("shape matches independently evaluated golden values") {
  const ShapingFamily k1(1);
  CHECK(k1.shape(0, ShapingTag{0}) == kG0);
  CHECK(k1.unshape(kG0, ShapingTag{0}) == 0);

  const ShapingFamily k8(8);
  CHECK(k8.shape(1, ShapingTag{7}) == 0x85E7BB0F12278575ULL);
  CHECK(k8.shape(0xDEADBEEF, ShapingTag{3}) == 0x49E56625E6673EC8ULL);
}

TEST_CASE("seeds follow (i+1) * golden gamma and are distinct") {
  const ShapingFamily f(8);
  for (std::uint32_t i = 0; i < 8; ++i)
    CHECK(f.seed(i) == (std::uint64_t{i} + 1) * kGoldenGamma);
  auto seeds = f.seeds();
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("unmix64 inverts mix64") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t x = rng();
    REQUIRE(unmix64(mix64(x)) == x);
    REQUIRE(mix64(unmix64(x)) == x);
  }
}

TEST_CASE("round trip is exact on 16-bit sub-ranges for every tag") {
  const ShapingFamily f(8);
  for (std::uint32_t i = 0; i < 8; ++i) {
    for (std::uint64_t base : {0ULL, 0xFFFFFFFFFFFF0000ULL, 0x123456789ABC0000ULL}) {
      std::vector<std::uint64_t> out;
      out.reserve(1 << 16);
      for (std::uint64_t x = base; x < base + (1 << 16); ++x) {
        const std::uint64_t v = f.shape(x, ShapingTag{i});
        REQUIRE(f.unshape(v, ShapingTag{i}) == x);
        out.push_back(v);
      }
      std::sort(out.begin(), out.end());
      REQUIRE(std::adjacent_find(out.begin(), out.end()) == out.end());
    }
  }
}

TEST_CASE("shape is injective on a million random distinct inputs") {
  std::mt19937_64 rng(11);
  std::vector<std::uint64_t> keys(1000000);
  for (auto &k : keys)
    k = rng();
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  const ShapingFamily f(4);
  std::vector<std::uint64_t> shaped;
  shaped.reserve(keys.size());
  for (auto k : keys)
    shaped.push_back(f.shape(k, ShapingTag{2}));
  std::sort(shaped.begin(), shaped.end());
  CHECK(std::adjacent_find(shaped.begin(), shaped.end()) == shaped.end());
}

TEST_CASE("tag out of range is a domain error") {
  const ShapingFamily f(4);
  CHECK_THROWS_AS(f.shape(1, ShapingTag{4}), DomainError);
  CHECK_THROWS_AS(f.unshape(1, ShapingTag{9}), DomainError);
  CHECK_THROWS_AS(ShapingFamily(0), DomainError);
}

TEST_CASE("unshape under different tags never coincides") {
  // unshape(v, i) ^ unshape(v, j) == seed_i ^ seed_j, nonzero for i != j.
  const ShapingFamily f(8);
  std::mt19937_64 rng(3);
  int collisions = 0;
  for (int n = 0; n < 100000; ++n) {
    const std::uint64_t v = rng();
    for (std::uint32_t i = 0; i < 8; ++i)
      for (std::uint32_t j = i + 1; j < 8; ++j)
        collisions += f.unshape(v, ShapingTag{i}) == f.unshape(v, ShapingTag{j});
  }
  CHECK(collisions == 0);
}

TEST_CASE("candidates enumerate shapes in tag order") {
  CHECK(ShapingFamily(1).candidates(42).size() == 1);

  const ShapingFamily f(8);
  std::mt19937_64 rng(5);
  for (int n = 0; n < 10000; ++n) {
    const std::uint64_t key = rng();
    auto c = f.candidates(key);
    REQUIRE(c.size() == 8);
    for (std::uint32_t i = 0; i < 8; ++i)
      REQUIRE(c[i] == f.shape(key, ShapingTag{i}));
    std::sort(c.begin(), c.end());
    REQUIRE(std::adjacent_find(c.begin(), c.end()) == c.end());
  }
}

TEST_CASE("metadata bits are ceil(log2 K)") {
  CHECK(metadata_bits(1) == 0);
  CHECK(metadata_bits(2) == 1);
  CHECK(metadata_bits(3) == 2);
  CHECK(metadata_bits(4) == 2);
  CHECK(metadata_bits(5) == 3);
  CHECK(metadata_bits(8) == 3);
}
