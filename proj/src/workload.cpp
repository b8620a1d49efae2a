#include "sst/workload.hpp"

#include "sst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace sst {

std::string_view to_string(QueryMode mode) noexcept {
  return mode == QueryMode::Hotspot ? "hotspot" : "uniform";
}

std::optional<QueryMode> parse_query_mode(std::string_view name) noexcept {
  if (name == "uniform")
    return QueryMode::Uniform;
  if (name == "hotspot")
    return QueryMode::Hotspot;
  return std::nullopt;
}

void WorkloadSpec::validate() const {
  if (m_requested == 0)
    throw DomainError("table size must be at least 1");
  if (!(load_factor > 0.0 && load_factor <= 1.0))
    throw DomainError("load factor must lie in (0, 1]");
  if (query_multiplier < 1)
    throw DomainError("query multiplier must be at least 1");
  if (!(hot_fraction > 0.0 && hot_fraction < 1.0))
    throw DomainError("hot fraction must lie in (0, 1)");
  if (!(hot_weight > 0.0 && hot_weight < 1.0))
    throw DomainError("hot weight must lie in (0, 1)");
}

std::uint64_t WorkloadSpec::key_count() const {
  // The epsilon keeps products such as 0.9 * 5000 from landing one short.
  return static_cast<std::uint64_t>(
      std::floor(load_factor * static_cast<double>(m_requested) + 1e-9));
}

std::vector<Key> gen_keys(const WorkloadSpec &spec) {
  const std::uint64_t n = spec.key_count();
  std::vector<Key> keys;
  keys.reserve(n);
  std::unordered_set<Key> seen;
  seen.reserve(n);
  KeyStream stream(spec.seed);
  while (keys.size() < n) {
    const Key k = stream.next();
    if (seen.insert(k).second)
      keys.push_back(k);
  }
  return keys;
}

QueryStream::QueryStream(const WorkloadSpec &spec, std::span<const Key> keys)
    : keys_(keys), stream_(spec.seed ^ kQuerySeedMask), mode_(spec.mode),
      remaining_(static_cast<std::uint64_t>(keys.size()) * spec.query_multiplier) {
  if (keys.empty())
    throw EmptyInputError("query generation needs a non-empty key set");
  const auto n = static_cast<double>(keys.size());
  hot_count_ = static_cast<std::uint64_t>(std::ceil(spec.hot_fraction * n - 1e-9));
  hot_count_ = std::min<std::uint64_t>(std::max<std::uint64_t>(hot_count_, 1), keys.size());
  hot_threshold_ = static_cast<std::uint64_t>(spec.hot_weight * 9007199254740992.0); // 2^53
}

Key QueryStream::next() noexcept {
  --remaining_;
  const std::uint64_t n = keys_.size();
  if (mode_ == QueryMode::Uniform)
    return keys_[stream_.next() % n];
  const bool hot = (stream_.next() >> 11) < hot_threshold_;
  const std::uint64_t r = stream_.next();
  const std::uint64_t cold = n - hot_count_;
  if (hot || cold == 0)
    return keys_[r % hot_count_];
  return keys_[hot_count_ + r % cold];
}

std::size_t QueryStream::fill(std::span<Key> out) noexcept {
  const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(out.size(), remaining_));
  for (std::size_t i = 0; i < n; ++i)
    out[i] = next();
  return n;
}

std::vector<Key> gen_queries(const WorkloadSpec &spec, std::span<const Key> keys) {
  QueryStream stream(spec, keys);
  std::vector<Key> out(stream.remaining());
  stream.fill(out);
  return out;
}

} // namespace sst
