#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hclab {

// Fixed-length dynamic bitset. Bits past size() in the last word are always zero.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return nbits_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  void assign(std::size_t i, bool value) noexcept { value ? set(i) : reset(i); }
  void clear() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }

  bool is_subset_of(const Bitset& other) const noexcept;
  bool intersects(const Bitset& other) const noexcept;

  Bitset& operator|=(const Bitset& other) noexcept;
  Bitset& operator&=(const Bitset& other) noexcept;
  Bitset& operator^=(const Bitset& other) noexcept;
  // Set difference.
  Bitset& operator-=(const Bitset& other) noexcept;

  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) noexcept { return a ^= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) noexcept { return a -= b; }

  friend bool operator==(const Bitset&, const Bitset&) = default;
  // Total order (by size, then word-wise from the top); used for ordered containers.
  friend bool operator<(const Bitset& a, const Bitset& b) noexcept;

  std::optional<std::size_t> first() const noexcept { return next(0); }
  // Smallest set index >= from.
  std::optional<std::size_t> next(std::size_t from) const noexcept;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(w * kWordBits + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  // Hex rendering, most significant nibble first, ceil(size/4) digits (at least one).
  std::string to_hex() const;
  static Bitset from_hex(std::string_view hex, std::size_t nbits);

  std::size_t hash() const noexcept;

 private:
  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

}  // namespace hclab
