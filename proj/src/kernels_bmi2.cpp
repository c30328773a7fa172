#include <immintrin.h>

#include <bit>

#include "kernels_impl.hpp"

namespace spider::kernels {

namespace {

// pdep scatters the single bit (1 << (k-1)) onto the k-th one of w; tzcnt
// reads back its position. An absent k-th one yields pdep == 0 -> tzcnt == 64.
__attribute__((target("bmi,bmi2"))) uint32_t bmi2_select_in_word(uint64_t w, uint32_t k) noexcept {
  if (k == 0 || k > 64) return word_npos;
  return static_cast<uint32_t>(_tzcnt_u64(_pdep_u64(uint64_t{1} << (k - 1), w)));
}

__attribute__((target("bmi,bmi2"))) uint32_t bmi2_select_in_block(const uint64_t* block, uint32_t k,
                                                                  uint32_t skip) noexcept {
  if (k == 0) return block_npos;
  uint32_t seen = 0;
  for (uint32_t w = 0; w < block_words; ++w) {
    const uint64_t word = w == 0 ? block[0] & (~uint64_t{0} << skip) : block[w];
    const uint32_t ones = static_cast<uint32_t>(_mm_popcnt_u64(word));
    if (seen + ones >= k) {
      return w * 64 + static_cast<uint32_t>(_tzcnt_u64(_pdep_u64(uint64_t{1} << (k - seen - 1), word)));
    }
    seen += ones;
  }
  return block_npos;
}

}  // namespace

// Exposed for the AVX2 set, which shares the in-word path.
uint32_t bmi2_select_in_word_entry(uint64_t w, uint32_t k) noexcept { return bmi2_select_in_word(w, k); }
uint32_t bmi2_select_in_block_entry(const uint64_t* block, uint32_t k, uint32_t skip) noexcept {
  return bmi2_select_in_block(block, k, skip);
}

const kernel_set& bmi2_set() noexcept {
  static const kernel_set set{"bmi2", bmi2_select_in_word, portable_rank_in_block, bmi2_select_in_block,
                              portable_popcount};
  return set;
}

}  // namespace spider::kernels
