#include "sst/keyspace.hpp"

#include "sst/errors.hpp"

#include <string>

namespace sst {
namespace {

// Inverse of an odd multiplier mod 2^64 by Newton iteration; each step
// doubles the number of correct low bits (3 -> 6 -> ... -> 96).
constexpr std::uint64_t mul_inverse(std::uint64_t a) {
  std::uint64_t x = a;
  for (int i = 0; i < 5; ++i)
    x *= 2 - a * x;
  return x;
}

constexpr std::uint64_t kMul1Inv = mul_inverse(0xBF58476D1CE4E5B9ULL);
constexpr std::uint64_t kMul2Inv = mul_inverse(0x94D049BB133111EBULL);
static_assert(kMul1Inv * 0xBF58476D1CE4E5B9ULL == 1);
static_assert(kMul2Inv * 0x94D049BB133111EBULL == 1);

// Inverse of v ^= v >> shift.
constexpr std::uint64_t unxorshift(std::uint64_t v, unsigned shift) {
  std::uint64_t x = v;
  for (unsigned known = shift; known < 64; known += shift)
    x = v ^ (x >> shift);
  return x;
}

} // namespace

std::uint64_t unmix64(std::uint64_t v) noexcept {
  v = unxorshift(v, 31);
  v *= kMul2Inv;
  v = unxorshift(v, 27);
  v *= kMul1Inv;
  v = unxorshift(v, 30);
  return v;
}

std::uint32_t metadata_bits(std::uint32_t k) noexcept {
  std::uint32_t bits = 0;
  while ((std::uint64_t{1} << bits) < k)
    ++bits;
  return bits;
}

ShapingFamily::ShapingFamily(std::uint32_t k) {
  if (k < 1 || k > kMaxOrder)
    throw DomainError("shaping order must be in [1, " + std::to_string(kMaxOrder) +
                      "], got " + std::to_string(k));
  seeds_.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i)
    seeds_.push_back((std::uint64_t{i} + 1) * kGoldenGamma);
}

void ShapingFamily::check(ShapingTag tag) const {
  if (tag.index >= k())
    throw DomainError("shaping tag " + std::to_string(tag.index) + " out of range for K=" +
                      std::to_string(k()));
}

std::uint64_t ShapingFamily::shape(Key key, ShapingTag tag) const {
  check(tag);
  return mix64(key ^ seeds_[tag.index]);
}

Key ShapingFamily::unshape(std::uint64_t shaped, ShapingTag tag) const {
  check(tag);
  return unmix64(shaped) ^ seeds_[tag.index];
}

std::vector<std::uint64_t> ShapingFamily::candidates(Key key) const {
  std::vector<std::uint64_t> out;
  candidates(key, out);
  return out;
}

void ShapingFamily::candidates(Key key, std::vector<std::uint64_t> &out) const {
  out.resize(seeds_.size());
  for (std::size_t i = 0; i < seeds_.size(); ++i)
    out[i] = mix64(key ^ seeds_[i]);
}

} // namespace sst
