#pragma once

#include <cstdint>
#include <vector>

namespace sst {

using Key = std::uint64_t;

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Invertible 64-bit finalizer (xor-shift / odd-multiply, splitmix64 constants).
constexpr std::uint64_t mix64(std::uint64_t v) noexcept {
  v ^= v >> 30;
  v *= 0xBF58476D1CE4E5B9ULL;
  v ^= v >> 27;
  v *= 0x94D049BB133111EBULL;
  v ^= v >> 31;
  return v;
}

std::uint64_t unmix64(std::uint64_t v) noexcept;

// Index of one transform within a ShapingFamily.
struct ShapingTag {
  std::uint32_t index = 0;

  friend constexpr bool operator==(ShapingTag, ShapingTag) = default;
};

// Number of bits needed to encode a tag of a family of order k: ceil(log2 k).
std::uint32_t metadata_bits(std::uint32_t k) noexcept;

// The K seeded bijections f_i(x) = mix64(x ^ seed_i), seed_i = (i+1)*gamma.
class ShapingFamily {
public:
  static constexpr std::uint32_t kMaxOrder = 256;

  explicit ShapingFamily(std::uint32_t k);

  std::uint32_t k() const noexcept { return static_cast<std::uint32_t>(seeds_.size()); }
  std::uint64_t seed(std::uint32_t i) const { return seeds_.at(i); }
  const std::vector<std::uint64_t> &seeds() const noexcept { return seeds_; }

  // Throws DomainError when tag.index >= k().
  std::uint64_t shape(Key key, ShapingTag tag) const;
  Key unshape(std::uint64_t shaped, ShapingTag tag) const;

  // [shape(key, 0), ..., shape(key, k-1)]
  std::vector<std::uint64_t> candidates(Key key) const;
  void candidates(Key key, std::vector<std::uint64_t> &out) const;

  // Unchecked variants for hot loops; the caller guarantees i < k().
  std::uint64_t shape_unchecked(Key key, std::uint32_t i) const noexcept {
    return mix64(key ^ seeds_[i]);
  }

private:
  void check(ShapingTag tag) const;

  std::vector<std::uint64_t> seeds_;
};

} // namespace sst
