#pragma once

#include "sst/tables.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sst {

// Dense histogram of probe counts (values >= 1).
class ProbeHistogram {
public:
  void add(std::uint64_t probes, std::uint64_t times = 1);
  void merge(const ProbeHistogram &other);

  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  std::uint64_t count(std::uint64_t probes) const noexcept {
    return probes < counts_.size() ? counts_[probes] : 0;
  }
  std::uint64_t max_value() const noexcept;
  std::uint64_t sum() const noexcept { return sum_; }
  double mean() const;

  // Nearest-rank percentile, p in (0, 100].
  std::uint64_t percentile(double p) const;

private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t sum_ = 0;
};

std::uint64_t percentile(const ProbeHistogram &hist, double p);

struct StructureStats {
  double collisions_per_record = 0.0;
  std::uint64_t max_cluster = 0;
  std::uint32_t metadata_bits = 0;
};

// Longest circular run of occupied slots.
std::uint64_t max_cluster(const std::vector<bool> &occupancy);

// alpha^k / (k+1): mean probability, over the fill trajectory 0..alpha, that
// all k candidate home slots are taken under uniform hashing.
double analytic_collision_rate(double alpha, std::uint32_t k);

double collision_rate(std::span<const InsertStats> build);

StructureStats structure_stats(const Table &table, std::span<const InsertStats> build);

} // namespace sst
