#include "sst/tables.hpp"

#include "sst/errors.hpp"

#include <array>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>

namespace sst {
namespace {

constexpr std::uint64_t kSecondarySalt = 0xD6E8FEB86659FD93ULL;
constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint64_t>::max();

template <ProbeScheme S> using SchemeTag = std::integral_constant<ProbeScheme, S>;

template <class F> decltype(auto) dispatch(ProbeScheme scheme, F &&f) {
  switch (scheme) {
  case ProbeScheme::Linear:
    return f(SchemeTag<ProbeScheme::Linear>{});
  case ProbeScheme::Quadratic:
    return f(SchemeTag<ProbeScheme::Quadratic>{});
  case ProbeScheme::Double:
    return f(SchemeTag<ProbeScheme::Double>{});
  case ProbeScheme::RobinHood:
    break;
  }
  return f(SchemeTag<ProbeScheme::RobinHood>{});
}

// Incremental walk over a probe sequence; pos is the slot for step i.
template <ProbeScheme S> class Sequence {
public:
  Sequence() = default; // indeterminate; assigned before use
  Sequence(std::uint64_t stored, std::uint64_t m)
      : pos_(home_index(stored, m)), m_(m),
        step_(S == ProbeScheme::Double ? secondary_step(stored, m) : 0), i_(0) {}

  std::uint64_t pos() const noexcept { return pos_; }
  std::uint64_t step() const noexcept { return i_; }

  void advance() noexcept {
    if constexpr (S == ProbeScheme::Linear || S == ProbeScheme::RobinHood) {
      if (++pos_ == m_)
        pos_ = 0;
    } else if constexpr (S == ProbeScheme::Quadratic) {
      // (i+1)^2 - i^2 = 2i + 1, and 2i + 1 < 2m
      std::uint64_t d = 2 * i_ + 1;
      if (d >= m_)
        d -= m_;
      pos_ += d;
      if (pos_ >= m_)
        pos_ -= m_;
    } else {
      pos_ += step_;
      if (pos_ >= m_)
        pos_ -= m_;
    }
    ++i_;
  }

private:
  std::uint64_t pos_;
  std::uint64_t m_;
  std::uint64_t step_;
  std::uint64_t i_;
};

struct Scan {
  std::uint64_t cost;      // kUnreachable when no empty slot within the limit
  std::uint64_t inspected; // slots looked at
};

template <ProbeScheme S>
Scan scan_to_empty(std::span<const Slot> slots, std::uint64_t stored, std::uint64_t limit) {
  const std::uint64_t m = slots.size();
  Sequence<S> seq(stored, m);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (!slots[seq.pos()].occupied)
      return {n, n};
    seq.advance();
  }
  return {kUnreachable, limit};
}

} // namespace

std::string_view to_string(ProbeScheme scheme) noexcept {
  switch (scheme) {
  case ProbeScheme::Linear:
    return "linear";
  case ProbeScheme::Quadratic:
    return "quadratic";
  case ProbeScheme::Double:
    return "double";
  case ProbeScheme::RobinHood:
    return "robinhood";
  }
  return "unknown";
}

std::optional<ProbeScheme> parse_scheme(std::string_view name) noexcept {
  for (ProbeScheme s : kAllSchemes)
    if (to_string(s) == name)
      return s;
  return std::nullopt;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2)
    return 2;
  if (n > Table::kMaxCapacity)
    throw DomainError("capacity request too large: " + std::to_string(n));
  for (std::uint64_t c = n | 1;; c += 2) {
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= c; d += 2) {
      if (c % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime)
      return c;
  }
}

std::uint64_t home_index(std::uint64_t stored, std::uint64_t m) { return mix64(stored) % m; }

std::uint64_t secondary_step(std::uint64_t stored, std::uint64_t m) {
  if (m <= 2)
    return 1;
  return 1 + mix64(stored ^ kSecondarySalt) % (m - 1);
}

std::uint64_t probe_index(ProbeScheme scheme, std::uint64_t home, std::uint64_t i, std::uint64_t h2,
                          std::uint64_t m) {
  const auto wide = [m](unsigned __int128 v) { return static_cast<std::uint64_t>(v % m); };
  switch (scheme) {
  case ProbeScheme::Quadratic:
    return wide(static_cast<unsigned __int128>(home) + static_cast<unsigned __int128>(i) * i);
  case ProbeScheme::Double:
    return wide(static_cast<unsigned __int128>(home) + static_cast<unsigned __int128>(i) * h2);
  case ProbeScheme::Linear:
  case ProbeScheme::RobinHood:
    break;
  }
  return wide(static_cast<unsigned __int128>(home) + i);
}

Table::Table(std::uint64_t m_requested, ProbeScheme scheme)
    : m_requested_(m_requested), scheme_(scheme) {
  if (m_requested == 0)
    throw DomainError("table capacity must be at least 1");
  slots_.resize(next_prime(m_requested));
}

Table::Table(std::uint64_t m_requested, ProbeScheme scheme, ShapingFamily family)
    : Table(m_requested, scheme) {
  family_.emplace(std::move(family));
}

std::uint64_t Table::cost_bounded(std::uint64_t stored, std::uint64_t limit) const noexcept {
  return dispatch(scheme_, [&](auto s) { return scan_to_empty<decltype(s)::value>(slots_, stored, limit).cost; });
}

std::uint64_t Table::probe_cost(std::uint64_t stored) const {
  if (full())
    throw CapacityError("probe cost refused: table is full");
  const std::uint64_t cost = cost_bounded(stored, capacity());
  if (cost == kUnreachable)
    throw CapacityError("probe cost refused: no empty slot on the probe sequence");
  return cost;
}

InsertStats Table::place(std::uint64_t stored, std::uint8_t tag) {
  if (full())
    throw CapacityError("insert into a full table (capacity " + std::to_string(capacity()) + ")");
  const std::uint64_t m = capacity();

  if (scheme_ == ProbeScheme::RobinHood) {
    Sequence<ProbeScheme::RobinHood> seq(stored, m);
    Slot carry{stored, 0, tag, true};
    InsertStats stats;
    stats.chosen_tag = ShapingTag{tag};
    // A linear walk reaches every slot within m steps, swaps included.
    for (;;) {
      ++stats.probes;
      Slot &slot = slots_[seq.pos()];
      if (!slot.occupied) {
        slot = carry;
        break;
      }
      if (stats.probes == 1)
        stats.collided = true;
      if (slot.displacement < carry.displacement)
        std::swap(slot, carry);
      seq.advance();
      ++carry.displacement;
    }
    ++count_;
    return stats;
  }

  return dispatch(scheme_, [&](auto s) -> InsertStats {
    Sequence<decltype(s)::value> seq(stored, m);
    for (std::uint64_t i = 0; i < m; ++i, seq.advance()) {
      Slot &slot = slots_[seq.pos()];
      if (!slot.occupied) {
        slot = Slot{stored, static_cast<std::uint32_t>(i), tag, true};
        ++count_;
        return InsertStats{i + 1, i > 0, ShapingTag{tag}, 0};
      }
    }
    throw CapacityError("no empty slot on the probe sequence");
  });
}

InsertStats Table::insert(Key key) { return shaped() ? insert_shaped(key) : insert_plain(key); }

LookupResult Table::lookup(Key key) const {
  return shaped() ? lookup_shaped(key) : lookup_plain(key);
}

InsertStats Table::insert_plain(Key key) { return place(key, 0); }

InsertStats Table::insert_shaped(Key key) {
  if (!family_)
    throw DomainError("insert_shaped on a table without a shaping family");
  if (full())
    throw CapacityError("insert into a full table (capacity " + std::to_string(capacity()) + ")");

  const ShapingFamily &family = *family_;
  const std::uint32_t k = family.k();
  std::uint64_t best_cost = kUnreachable;
  std::uint64_t best_value = 0;
  std::uint32_t best_tag = 0;
  std::uint64_t evaluated = 0;

  // Later candidates only win with a strictly lower cost, so each scan is
  // capped at best_cost - 1 slots; cost 1 cannot be beaten.
  for (std::uint32_t i = 0; i < k && best_cost > 1; ++i) {
    const std::uint64_t v = family.shape_unchecked(key, i);
    const std::uint64_t limit = best_cost == kUnreachable ? capacity() : best_cost - 1;
    const Scan scan = dispatch(scheme_, [&](auto s) {
      return scan_to_empty<decltype(s)::value>(slots_, v, limit);
    });
    evaluated += scan.inspected;
    if (scan.cost != kUnreachable) {
      best_cost = scan.cost;
      best_value = v;
      best_tag = i;
    }
  }
  if (best_cost == kUnreachable)
    throw CapacityError("no candidate reaches an empty slot");

  InsertStats stats = place(best_value, static_cast<std::uint8_t>(best_tag));
  stats.evaluation_probes = evaluated;
  return stats;
}

LookupResult Table::find(std::uint64_t stored, std::uint8_t tag, bool early_exit) const noexcept {
  const std::uint64_t m = capacity();
  const bool robin = early_exit && scheme_ == ProbeScheme::RobinHood;
  return dispatch(scheme_, [&](auto s) -> LookupResult {
    Sequence<decltype(s)::value> seq(stored, m);
    for (std::uint64_t i = 0; i < m; ++i, seq.advance()) {
      const Slot &slot = slots_[seq.pos()];
      if (!slot.occupied)
        return {false, i + 1, {}};
      if (slot.stored == stored && slot.tag == tag)
        return {true, i + 1, ShapingTag{tag}};
      if (robin && slot.displacement < i)
        return {false, i + 1, {}};
    }
    return {false, m, {}};
  });
}

LookupResult Table::lookup_plain(Key key) const { return find(key, 0, true); }

LookupResult Table::lookup_shaped(Key key) const {
  if (!family_)
    return lookup_plain(key);
  return dispatch(scheme_, [&](auto s) { return find_depth_major<decltype(s)::value, true>(key); });
}

// Visits (depth, tag) pairs in lexicographic order: every live candidate at
// depth 0 in ascending tag order, then depth 1, and so on. A candidate drops
// out when its walk terminates. This is the order in which insert_shaped
// ranks placements, so a stored key is met at exactly the position its
// insertion chose, before any deeper slot of a lower tag.
template <ProbeScheme S, bool EarlyExit> LookupResult Table::find_depth_major(Key key) const {
  const ShapingFamily &family = *family_;
  const std::uint32_t k = family.k();
  const std::uint64_t m = capacity();
  constexpr bool robin = EarlyExit && S == ProbeScheme::RobinHood;

  std::array<Sequence<S>, ShapingFamily::kMaxOrder> seqs;
  std::array<std::uint64_t, ShapingFamily::kMaxOrder> values;
  std::array<std::uint16_t, ShapingFamily::kMaxOrder> live;
  std::uint32_t n_live = 0;
  std::uint64_t probes = 0;

  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint64_t v = family.shape_unchecked(key, i);
    seqs[i] = Sequence<S>(v, m);
    ++probes;
    const Slot &slot = slots_[seqs[i].pos()];
    if (!slot.occupied)
      continue;
    if (slot.stored == v && slot.tag == i)
      return {true, probes, ShapingTag{i}};
    values[i] = v;
    live[n_live++] = static_cast<std::uint16_t>(i);
  }

  for (std::uint64_t depth = 1; depth < m && n_live > 0; ++depth) {
    std::uint32_t kept = 0;
    for (std::uint32_t n = 0; n < n_live; ++n) {
      const std::uint16_t i = live[n];
      seqs[i].advance();
      ++probes;
      const Slot &slot = slots_[seqs[i].pos()];
      if (!slot.occupied)
        continue;
      if (slot.stored == values[i] && slot.tag == i)
        return {true, probes, ShapingTag{i}};
      if (robin && slot.displacement < depth)
        continue;
      live[kept++] = i;
    }
    n_live = kept;
  }
  return {false, probes, {}};
}

LookupResult Table::lookup_shaped_sequential(Key key) const {
  if (!family_)
    return lookup_plain(key);
  const ShapingFamily &family = *family_;
  std::uint64_t probes = 0;
  for (std::uint32_t i = 0; i < family.k(); ++i) {
    const LookupResult r = find(family.shape_unchecked(key, i), static_cast<std::uint8_t>(i), true);
    probes += r.probes;
    if (r.found)
      return {true, probes, r.tag};
  }
  return {false, probes, {}};
}

LookupResult Table::lookup_exhaustive(Key key) const {
  if (!family_)
    return find(key, 0, false);
  return dispatch(scheme_, [&](auto s) { return find_depth_major<decltype(s)::value, false>(key); });
}

Key Table::reconstruct(const Slot &slot) const {
  if (!family_)
    return slot.stored;
  return family_->unshape(slot.stored, ShapingTag{slot.tag});
}

std::vector<bool> Table::occupancy() const {
  std::vector<bool> bits(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i)
    bits[i] = slots_[i].occupied;
  return bits;
}

} // namespace sst
