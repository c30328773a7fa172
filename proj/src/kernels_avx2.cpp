#include <immintrin.h>

#include "kernels_impl.hpp"

namespace spider::kernels {

uint32_t bmi2_select_in_word_entry(uint64_t w, uint32_t k) noexcept;
uint32_t bmi2_select_in_block_entry(const uint64_t* block, uint32_t k, uint32_t skip) noexcept;

namespace {

// Nibble-lookup popcount (Mula); returns four 64-bit lane sums.
__attribute__((target("avx2"))) inline __m256i popcount_lanes(__m256i v) noexcept {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

__attribute__((target("avx2"))) inline uint64_t horizontal_sum(__m256i v) noexcept {
  const __m128i sum = _mm_add_epi64(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  return static_cast<uint64_t>(_mm_cvtsi128_si64(sum)) + static_cast<uint64_t>(_mm_extract_epi64(sum, 1));
}

__attribute__((target("avx2"))) uint32_t avx2_rank_in_block(const uint64_t* block, uint32_t j,
                                                           uint32_t skip) noexcept {
  const __m256i last = _mm256_set1_epi64x(j >> 6);
  const __m256i tail = _mm256_set1_epi64x(static_cast<long long>(~uint64_t{0} >> (63 - (j & 63))));
  const __m256i idx_lo = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i idx_hi = _mm256_setr_epi64x(4, 5, 6, 7);

  // Lanes before the last word keep everything, the last word keeps bits <= j.
  __m256i mask_lo = _mm256_or_si256(_mm256_cmpgt_epi64(last, idx_lo),
                                    _mm256_and_si256(_mm256_cmpeq_epi64(last, idx_lo), tail));
  const __m256i mask_hi = _mm256_or_si256(_mm256_cmpgt_epi64(last, idx_hi),
                                          _mm256_and_si256(_mm256_cmpeq_epi64(last, idx_hi), tail));
  mask_lo = _mm256_and_si256(
      mask_lo, _mm256_setr_epi64x(static_cast<long long>(~uint64_t{0} << skip), -1, -1, -1));

  const __m256i lo = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(block)), mask_lo);
  const __m256i hi = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(block + 4)), mask_hi);
  return static_cast<uint32_t>(horizontal_sum(_mm256_add_epi64(popcount_lanes(lo), popcount_lanes(hi))));
}

__attribute__((target("avx2,popcnt"))) uint64_t avx2_popcount(const uint64_t* words, std::size_t count) noexcept {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i))));
  }
  uint64_t total = horizontal_sum(acc);
  for (; i < count; ++i) total += static_cast<uint64_t>(_mm_popcnt_u64(words[i]));
  return total;
}

}  // namespace

const kernel_set& avx2_set() noexcept {
  static const kernel_set set{"avx2", bmi2_select_in_word_entry, avx2_rank_in_block, bmi2_select_in_block_entry,
                              avx2_popcount};
  return set;
}

}  // namespace spider::kernels
