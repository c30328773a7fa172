#pragma once

#include <cstddef>
#include <cstdint>
#include <new>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace spider {

inline constexpr std::size_t cache_line_bytes = 64;

/// Minimal over-aligned allocator so 512-bit blocks start on a cache line.
template <typename T, std::size_t Alignment = cache_line_bytes>
struct aligned_allocator {
  using value_type = T;

  aligned_allocator() noexcept = default;
  template <typename U>
  aligned_allocator(const aligned_allocator<U, Alignment>&) noexcept {}

  template <typename U>
  struct rebind {
    using other = aligned_allocator<U, Alignment>;
  };

  T* allocate(std::size_t count) {
    return static_cast<T*>(::operator new(count * sizeof(T), std::align_val_t{Alignment}));
  }
  void deallocate(T* ptr, std::size_t) noexcept {
    ::operator delete(ptr, std::align_val_t{Alignment});
  }

  // resize(n) default-initializes: builders overwrite every word anyway.
  template <typename U>
  void construct(U* ptr) noexcept(std::is_nothrow_default_constructible_v<U>) {
    ::new (static_cast<void*>(ptr)) U;
  }
  template <typename U, typename... Args>
  void construct(U* ptr, Args&&... args) {
    ::new (static_cast<void*>(ptr)) U(std::forward<Args>(args)...);
  }

  template <typename U>
  bool operator==(const aligned_allocator<U, Alignment>&) const noexcept {
    return true;
  }
};

template <typename T>
using aligned_vector = std::vector<T, aligned_allocator<T>>;

inline constexpr uint64_t words_for_bits(uint64_t bits) { return (bits + 63) / 64; }

/// Plain, immutable, uncompressed bit sequence. Bit i lives at bit (i % 64)
/// of word i / 64 (LSB-first). Bits at positions >= size() are always zero.
class bit_vector {
 public:
  bit_vector() = default;

  /// n bits, all set to `value`.
  explicit bit_vector(uint64_t n, bool value = false);

  /// Takes ownership of `words`; throws std::invalid_argument when the word
  /// count is not ceil(n/64) or bits past n are set.
  bit_vector(uint64_t n, std::vector<uint64_t> words);

  /// "1011" -> bits 1,0,1,1 at positions 0..3. Throws on other characters.
  static bit_vector from_string(std::string_view bits);

  uint64_t size() const noexcept { return n_; }
  uint64_t ones() const noexcept { return n1_; }
  bool empty() const noexcept { return n_ == 0; }

  /// Throws std::out_of_range for i >= size().
  bool get(uint64_t i) const;
  bool operator[](uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

  std::span<const uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const bit_vector&, const bit_vector&) = default;

 private:
  uint64_t n_ = 0;
  uint64_t n1_ = 0;
  std::vector<uint64_t> words_;
};

/// 64 bits of `words` starting at bit `pos`; bits past the end read as zero.
inline uint64_t extract_word(std::span<const uint64_t> words, uint64_t pos) noexcept {
  const uint64_t w = pos >> 6;
  const unsigned shift = pos & 63;
  if (w >= words.size()) return 0;
  uint64_t lo = words[w] >> shift;
  if (shift != 0 && w + 1 < words.size()) lo |= words[w + 1] << (64 - shift);
  return lo;
}

}  // namespace spider
