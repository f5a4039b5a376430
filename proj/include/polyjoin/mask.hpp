#pragma once

// Vertex-subset encodings. A simplex of a complex on n vertices is a set of
// vertex indices 0..n-1 stored as a bitmask: a single machine word when
// n <= 64, a multi-word dense mask otherwise. Every algorithm in the library is
// written once against the free functions below and instantiated for both.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace polyjoin {

using WordMask = std::uint64_t;

/// Fixed-width bitset spanning any number of 64-bit words.
class DenseMask {
 public:
  DenseMask() = default;
  explicit DenseMask(std::size_t width) : words_((width + 63) / 64, 0) {}

  std::size_t word_count() const noexcept { return words_.size(); }
  std::uint64_t word(std::size_t w) const noexcept { return w < words_.size() ? words_[w] : 0; }
  std::uint64_t& word_ref(std::size_t w) { return words_[w]; }

  friend DenseMask operator|(const DenseMask& a, const DenseMask& b) {
    DenseMask out = a.words_.size() >= b.words_.size() ? a : b;
    const DenseMask& other = a.words_.size() >= b.words_.size() ? b : a;
    for (std::size_t w = 0; w < other.words_.size(); ++w) out.words_[w] |= other.words_[w];
    return out;
  }
  friend DenseMask operator&(const DenseMask& a, const DenseMask& b) {
    DenseMask out = a;
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] &= b.word(w);
    return out;
  }
  friend bool operator==(const DenseMask& a, const DenseMask& b) {
    const std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < n; ++w) {
      if (a.word(w) != b.word(w)) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

template <class Mask>
struct MaskTraits;

template <>
struct MaskTraits<WordMask> {
  static constexpr std::size_t max_width = 64;
  static WordMask zero(std::size_t /*width*/) noexcept { return 0; }
};

template <>
struct MaskTraits<DenseMask> {
  static constexpr std::size_t max_width = std::numeric_limits<std::size_t>::max();
  static DenseMask zero(std::size_t width) { return DenseMask(width); }
};

template <class Mask>
concept VertexMask = requires { MaskTraits<Mask>::max_width; };

// ---- word masks ------------------------------------------------------------

inline void set_bit(WordMask& m, std::size_t i) noexcept { m |= WordMask{1} << i; }
inline void reset_bit(WordMask& m, std::size_t i) noexcept { m &= ~(WordMask{1} << i); }
inline bool test_bit(WordMask m, std::size_t i) noexcept { return (m >> i) & 1U; }
inline std::size_t popcount(WordMask m) noexcept { return static_cast<std::size_t>(std::popcount(m)); }
inline bool is_subset(WordMask a, WordMask b) noexcept { return (a & ~b) == 0; }
inline WordMask minus(WordMask a, WordMask b) noexcept { return a & ~b; }
inline bool is_empty(WordMask m) noexcept { return m == 0; }

template <class F>
void for_each_bit(WordMask m, F&& f) {
  while (m != 0) {
    f(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

inline bool any_above(WordMask m, std::size_t p) noexcept { return ((m >> p) >> 1) != 0; }

inline std::size_t lowest_bit(WordMask m) noexcept { return static_cast<std::size_t>(std::countr_zero(m)); }

inline std::size_t mask_hash(WordMask m) noexcept { return std::hash<WordMask>{}(m); }

// ---- dense masks -----------------------------------------------------------

inline void set_bit(DenseMask& m, std::size_t i) { m.word_ref(i / 64) |= std::uint64_t{1} << (i % 64); }
inline void reset_bit(DenseMask& m, std::size_t i) { m.word_ref(i / 64) &= ~(std::uint64_t{1} << (i % 64)); }
inline bool test_bit(const DenseMask& m, std::size_t i) noexcept { return (m.word(i / 64) >> (i % 64)) & 1U; }

inline std::size_t popcount(const DenseMask& m) noexcept {
  std::size_t n = 0;
  for (std::size_t w = 0; w < m.word_count(); ++w) n += static_cast<std::size_t>(std::popcount(m.word(w)));
  return n;
}

inline bool is_subset(const DenseMask& a, const DenseMask& b) noexcept {
  for (std::size_t w = 0; w < a.word_count(); ++w) {
    if ((a.word(w) & ~b.word(w)) != 0) return false;
  }
  return true;
}

inline DenseMask minus(const DenseMask& a, const DenseMask& b) {
  DenseMask out = a;
  for (std::size_t w = 0; w < out.word_count(); ++w) out.word_ref(w) &= ~b.word(w);
  return out;
}

inline bool is_empty(const DenseMask& m) noexcept {
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    if (m.word(w) != 0) return false;
  }
  return true;
}

template <class F>
void for_each_bit(const DenseMask& m, F&& f) {
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    std::uint64_t bits = m.word(w);
    while (bits != 0) {
      f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

inline bool any_above(const DenseMask& m, std::size_t p) noexcept {
  const std::size_t w0 = p / 64;
  if (((m.word(w0) >> (p % 64)) >> 1) != 0) return true;
  for (std::size_t w = w0 + 1; w < m.word_count(); ++w) {
    if (m.word(w) != 0) return true;
  }
  return false;
}

inline std::size_t lowest_bit(const DenseMask& m) noexcept {
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    if (m.word(w) != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(m.word(w)));
  }
  return m.word_count() * 64;
}

inline std::size_t mask_hash(const DenseMask& m) noexcept {
  std::size_t h = 0;
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    h ^= std::hash<std::uint64_t>{}(m.word(w)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---- generic helpers ---------------------------------------------------------

template <VertexMask Mask>
std::vector<std::size_t> bit_indices(const Mask& m) {
  std::vector<std::size_t> out;
  out.reserve(popcount(m));
  for_each_bit(m, [&](std::size_t i) { out.push_back(i); });
  return out;
}

/// Lexicographic order of the sorted index lists the masks encode; a proper
/// prefix sorts first.
template <VertexMask Mask>
bool lex_less(const Mask& a, const Mask& b) {
  if (a == b) return false;
  const std::size_t p = lowest_bit(minus(a, b) | minus(b, a));
  return test_bit(a, p) ? any_above(b, p) : !any_above(a, p);
}

template <VertexMask Mask>
struct MaskHash {
  std::size_t operator()(const Mask& m) const noexcept { return mask_hash(m); }
};

}  // namespace polyjoin
