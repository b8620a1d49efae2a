#pragma once

#include "sst/keyspace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sst {

enum class QueryMode : std::uint8_t { Uniform, Hotspot };

std::string_view to_string(QueryMode mode) noexcept;
std::optional<QueryMode> parse_query_mode(std::string_view name) noexcept;

struct WorkloadSpec {
  std::uint64_t m_requested = 5000;
  double load_factor = 0.95;
  std::uint32_t query_multiplier = 1;
  QueryMode mode = QueryMode::Uniform;
  std::uint64_t seed = 1;
  double hot_fraction = 0.10;
  double hot_weight = 0.90;

  // Throws DomainError on an out-of-range field.
  void validate() const;

  // N = floor(alpha * m_requested)
  std::uint64_t key_count() const;
  std::uint64_t query_count() const { return key_count() * query_multiplier; }
};

// mix64(seed), mix64(seed + gamma), mix64(seed + 2 gamma), ...
class KeyStream {
public:
  explicit KeyStream(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    const std::uint64_t v = mix64(state_);
    state_ += kGoldenGamma;
    return v;
  }

private:
  std::uint64_t state_;
};

std::vector<Key> gen_keys(const WorkloadSpec &spec);

// Lazily produces the query stream so large Q need not be materialized.
class QueryStream {
public:
  // Throws EmptyInputError for an empty key set.
  QueryStream(const WorkloadSpec &spec, std::span<const Key> keys);

  Key next() noexcept;
  std::uint64_t remaining() const noexcept { return remaining_; }

  // Writes up to out.size() queries, returns how many were written.
  std::size_t fill(std::span<Key> out) noexcept;

private:
  std::span<const Key> keys_;
  KeyStream stream_;
  QueryMode mode_;
  std::uint64_t hot_count_;
  std::uint64_t hot_threshold_; // Bernoulli cut on the top 53 bits
  std::uint64_t remaining_;
};

inline constexpr std::uint64_t kQuerySeedMask = 0xA5A5A5A5A5A5A5A5ULL;

std::vector<Key> gen_queries(const WorkloadSpec &spec, std::span<const Key> keys);

} // namespace sst
