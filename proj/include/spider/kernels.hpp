#pragma once

// In-word and in-cache-line rank/select kernels.
//
// Every kernel set computes bit-identical results. `portable()` is the
// reference: broadword select plus plain popcounts. The x86 sets use
// pdep/tzcnt for select within a word and AVX2 for the masked block popcount;
// they are compiled with per-function target attributes and only handed out
// when the running CPU reports support.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace spider {

inline constexpr uint32_t block_words = 8;
inline constexpr uint32_t block_bits = 512;

/// Returned by select_in_word when the word has fewer than k ones.
inline constexpr uint32_t word_npos = 64;
/// Returned by a kernel's select_in_block when the block has fewer than k ones.
inline constexpr uint32_t block_npos = 512;

using block_span = std::span<const uint64_t, block_words>;

namespace kernels {

struct kernel_set {
  std::string_view name;
  /// Position of the k-th (1-based) one in w, or word_npos.
  uint32_t (*select_in_word)(uint64_t w, uint32_t k) noexcept;
  /// Ones among block bits [skip, j], skip in {0, 16}, skip <= j < 512.
  uint32_t (*rank_in_block)(const uint64_t* block, uint32_t j, uint32_t skip) noexcept;
  /// Offset from block bit 0 of the k-th one at or after `skip`, or block_npos.
  uint32_t (*select_in_block)(const uint64_t* block, uint32_t k, uint32_t skip) noexcept;
  /// Total population count of a word range.
  uint64_t (*popcount)(const uint64_t* words, std::size_t count) noexcept;
};

const kernel_set& portable() noexcept;

/// nullptr when not compiled in or not supported by this CPU.
const kernel_set* bmi2() noexcept;
const kernel_set* avx2() noexcept;

/// Every kernel set usable on this machine, portable first.
std::vector<const kernel_set*> available();

/// The fastest usable set (portable on cores with microcoded pdep). The
/// SPIDER_KERNELS environment variable (portable | bmi2 | avx2) overrides
/// the choice when that set is usable.
const kernel_set& best() noexcept;

/// Lookup by name among available(); throws std::invalid_argument.
const kernel_set& by_name(std::string_view name);

}  // namespace kernels

inline uint32_t select_in_word(uint64_t w, uint32_t k) noexcept {
  return kernels::best().select_in_word(w, k);
}

inline uint32_t rank_in_block(block_span block, uint32_t j, uint32_t skip) {
  return kernels::best().rank_in_block(block.data(), j, skip);
}

/// Throws std::logic_error when the block holds fewer than k ones at or
/// after `skip`: callers only get here after a scan that guarantees it.
inline uint32_t select_in_block(block_span block, uint32_t k, uint32_t skip,
                                const kernels::kernel_set& ks = kernels::best()) {
  const uint32_t offset = ks.select_in_block(block.data(), k, skip);
  if (offset == block_npos) throw std::logic_error("select_in_block: rank exceeds ones in block");
  return offset;
}

}  // namespace spider
