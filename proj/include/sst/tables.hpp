#pragma once

#include "sst/keyspace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sst {

enum class ProbeScheme : std::uint8_t { Linear, Quadratic, Double, RobinHood };

inline constexpr ProbeScheme kAllSchemes[] = {ProbeScheme::Linear, ProbeScheme::Quadratic,
                                              ProbeScheme::Double, ProbeScheme::RobinHood};

std::string_view to_string(ProbeScheme scheme) noexcept;
std::optional<ProbeScheme> parse_scheme(std::string_view name) noexcept;

struct Slot {
  std::uint64_t stored = 0;       // original key (plain) or shaped value
  std::uint32_t displacement = 0; // position within its own probe sequence
  std::uint8_t tag = 0;
  bool occupied = false;
};

struct InsertStats {
  std::uint64_t probes = 0;
  bool collided = false;
  ShapingTag chosen_tag{};
  // Slots scanned while pricing candidates (shaped inserts only).
  std::uint64_t evaluation_probes = 0;
};

struct LookupResult {
  bool found = false;
  std::uint64_t probes = 0;
  ShapingTag tag{};
};

// Smallest prime >= n (2 for n <= 2).
std::uint64_t next_prime(std::uint64_t n);

// mix64(value) mod m. Shared by plain and shaped tables.
std::uint64_t home_index(std::uint64_t stored, std::uint64_t m);

// Double-hashing step in [1, m-1]; 1 when m <= 2.
std::uint64_t secondary_step(std::uint64_t stored, std::uint64_t m);

// Slot visited at step i of a probe sequence starting at home.
std::uint64_t probe_index(ProbeScheme scheme, std::uint64_t home, std::uint64_t i, std::uint64_t h2,
                          std::uint64_t m);

// Fixed-capacity open-addressed table. Capacity is rounded up to a prime.
// No deletion, no resizing; keys are expected to be distinct.
class Table {
public:
  static constexpr std::uint64_t kMaxCapacity = 1ULL << 31;

  Table(std::uint64_t m_requested, ProbeScheme scheme);
  Table(std::uint64_t m_requested, ProbeScheme scheme, ShapingFamily family);

  std::uint64_t requested_capacity() const noexcept { return m_requested_; }
  std::uint64_t capacity() const noexcept { return slots_.size(); }
  std::uint64_t size() const noexcept { return count_; }
  bool full() const noexcept { return count_ == slots_.size(); }
  ProbeScheme scheme() const noexcept { return scheme_; }
  bool shaped() const noexcept { return family_.has_value(); }
  const ShapingFamily *family() const noexcept { return family_ ? &*family_ : nullptr; }

  // Slots inspected along stored's probe sequence up to and including the
  // first empty slot. Throws CapacityError when none is reachable.
  std::uint64_t probe_cost(std::uint64_t stored) const;

  // Dispatches on shaped().
  InsertStats insert(Key key);
  LookupResult lookup(Key key) const;

  InsertStats insert_plain(Key key);
  InsertStats insert_shaped(Key key);
  LookupResult lookup_plain(Key key) const;

  // Walks all candidates depth by depth (tag order within a depth); probes
  // count every slot inspected, across all candidates.
  LookupResult lookup_shaped(Key key) const;

  // Walks candidate 0 to termination, then candidate 1, and so on.
  LookupResult lookup_shaped_sequential(Key key) const;

  // lookup() without Robin Hood early termination; walks end only on an
  // empty slot or after m steps.
  LookupResult lookup_exhaustive(Key key) const;

  // Original key held by an occupied slot.
  Key reconstruct(const Slot &slot) const;

  std::span<const Slot> slots() const noexcept { return slots_; }
  std::vector<bool> occupancy() const;

private:
  std::uint64_t cost_bounded(std::uint64_t stored, std::uint64_t limit) const noexcept;
  InsertStats place(std::uint64_t stored, std::uint8_t tag);
  LookupResult find(std::uint64_t stored, std::uint8_t tag, bool early_exit) const noexcept;
  template <ProbeScheme S, bool EarlyExit> LookupResult find_depth_major(Key key) const;

  std::uint64_t m_requested_;
  ProbeScheme scheme_;
  std::optional<ShapingFamily> family_;
  std::vector<Slot> slots_;
  std::uint64_t count_ = 0;
};

} // namespace sst
