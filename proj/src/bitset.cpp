#include "hclab/bitset.hpp"

#include <algorithm>

#include "hclab/errors.hpp"

namespace hclab {

void Bitset::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

std::size_t Bitset::count() const noexcept {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Bitset::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

bool Bitset::is_subset_of(const Bitset& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool Bitset::intersects(const Bitset& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

Bitset& Bitset::operator|=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::operator&=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::operator^=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool operator<(const Bitset& a, const Bitset& b) noexcept {
  if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  }
  return false;
}

std::optional<std::size_t> Bitset::next(std::size_t from) const noexcept {
  if (from >= nbits_) return std::nullopt;
  std::size_t w = from / kWordBits;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w == words_.size()) return std::nullopt;
    bits = words_[w];
  }
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::string Bitset::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t ndigits = std::max<std::size_t>(1, (nbits_ + 3) / 4);
  std::string out(ndigits, '0');
  for (std::size_t k = 0; k < ndigits; ++k) {
    const std::size_t bit = 4 * k;
    unsigned nibble = 0;
    for (std::size_t j = 0; j < 4 && bit + j < nbits_; ++j) nibble |= (test(bit + j) ? 1U : 0U) << j;
    out[ndigits - 1 - k] = kDigits[nibble];
  }
  return out;
}

Bitset Bitset::from_hex(std::string_view hex, std::size_t nbits) {
  const std::size_t ndigits = std::max<std::size_t>(1, (nbits + 3) / 4);
  if (hex.size() != ndigits) throw ParseError("hex mask has " + std::to_string(hex.size()) + " digits, expected " +
                                              std::to_string(ndigits));
  Bitset out(nbits);
  for (std::size_t k = 0; k < ndigits; ++k) {
    const char c = hex[ndigits - 1 - k];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
    else throw ParseError(std::string("invalid hex digit '") + c + "'");
    for (std::size_t j = 0; j < 4; ++j) {
      if (((nibble >> j) & 1U) == 0) continue;
      if (4 * k + j >= nbits) throw ParseError("hex mask sets a bit beyond the vertex range");
      out.set(4 * k + j);
    }
  }
  return out;
}

std::size_t Bitset::hash() const noexcept {
  std::size_t h = 1469598103934665603ULL ^ nbits_;
  for (Word w : words_) {
    h ^= static_cast<std::size_t>(w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
  return h;
}

}  // namespace hclab
