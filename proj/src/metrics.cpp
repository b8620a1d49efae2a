#include "sst/metrics.hpp"

#include "sst/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sst {

void ProbeHistogram::add(std::uint64_t probes, std::uint64_t times) {
  if (probes >= counts_.size())
    counts_.resize(probes + 1, 0);
  counts_[probes] += times;
  total_ += times;
  sum_ += probes * times;
}

void ProbeHistogram::merge(const ProbeHistogram &other) {
  if (other.counts_.size() > counts_.size())
    counts_.resize(other.counts_.size(), 0);
  for (std::size_t v = 0; v < other.counts_.size(); ++v)
    counts_[v] += other.counts_[v];
  total_ += other.total_;
  sum_ += other.sum_;
}

std::uint64_t ProbeHistogram::max_value() const noexcept {
  for (std::size_t v = counts_.size(); v-- > 0;)
    if (counts_[v] != 0)
      return v;
  return 0;
}

double ProbeHistogram::mean() const {
  if (total_ == 0)
    throw EmptyInputError("mean of an empty histogram");
  return static_cast<double>(sum_) / static_cast<double>(total_);
}

std::uint64_t ProbeHistogram::percentile(double p) const {
  if (!(p > 0.0 && p <= 100.0))
    throw DomainError("percentile must lie in (0, 100]");
  if (total_ == 0)
    throw EmptyInputError("percentile of an empty histogram");
  // rank = ceil(p/100 * total), computed in integers when p is whole to
  // avoid 0.95 * 100-style rounding surprises.
  std::uint64_t rank;
  const double whole = std::floor(p);
  if (whole == p) {
    const auto pi = static_cast<std::uint64_t>(p);
    rank = (pi * total_ + 99) / 100;
  } else {
    rank = static_cast<std::uint64_t>(std::ceil(p / 100.0 * static_cast<double>(total_)));
  }
  rank = std::clamp<std::uint64_t>(rank, 1, total_);
  std::uint64_t cumulative = 0;
  for (std::size_t v = 0; v < counts_.size(); ++v) {
    cumulative += counts_[v];
    if (cumulative >= rank)
      return v;
  }
  return max_value();
}

std::uint64_t percentile(const ProbeHistogram &hist, double p) { return hist.percentile(p); }

std::uint64_t max_cluster(const std::vector<bool> &occupancy) {
  const std::size_t m = occupancy.size();
  std::size_t first_empty = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (!occupancy[i]) {
      first_empty = i;
      break;
    }
  }
  if (first_empty == m)
    return m;
  // Start scanning just past an empty slot so wraparound runs stay whole.
  std::uint64_t best = 0;
  std::uint64_t run = 0;
  for (std::size_t n = 1; n <= m; ++n) {
    const std::size_t i = (first_empty + n) % m;
    if (occupancy[i]) {
      best = std::max(best, ++run);
    } else {
      run = 0;
    }
  }
  return best;
}

double analytic_collision_rate(double alpha, std::uint32_t k) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("load factor must lie in [0, 1]");
  if (k < 1)
    throw DomainError("shaping order must be at least 1");
  return std::pow(alpha, static_cast<double>(k)) / static_cast<double>(k + 1);
}

double collision_rate(std::span<const InsertStats> build) {
  if (build.empty())
    throw EmptyInputError("collision rate of an empty build");
  const auto collided = std::count_if(build.begin(), build.end(),
                                      [](const InsertStats &s) { return s.collided; });
  return static_cast<double>(collided) / static_cast<double>(build.size());
}

StructureStats structure_stats(const Table &table, std::span<const InsertStats> build) {
  StructureStats out;
  out.collisions_per_record = build.empty() ? 0.0 : collision_rate(build);
  out.max_cluster = max_cluster(table.occupancy());
  out.metadata_bits = table.shaped() ? metadata_bits(table.family()->k()) : 0;
  return out;
}

} // namespace sst
