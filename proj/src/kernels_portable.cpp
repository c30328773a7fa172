#include <array>
#include <bit>

#include "kernels_impl.hpp"

namespace spider::kernels {

namespace {

constexpr uint64_t ones_step_8 = 0x0101010101010101ULL;
constexpr uint64_t msbs_step_8 = 0x8080808080808080ULL;

// select_in_byte[(rank << 8) | byte] = position of the (rank+1)-th one of byte.
constexpr std::array<uint8_t, 2048> make_select_in_byte() {
  std::array<uint8_t, 2048> table{};
  for (uint32_t byte = 0; byte < 256; ++byte) {
    uint32_t seen = 0;
    for (uint32_t bit = 0; bit < 8; ++bit) {
      if ((byte >> bit) & 1) {
        table[(seen << 8) | byte] = static_cast<uint8_t>(bit);
        ++seen;
      }
    }
  }
  return table;
}

constexpr auto select_in_byte = make_select_in_byte();

}  // namespace

uint32_t portable_select_in_word(uint64_t w, uint32_t k) noexcept {
  if (k == 0 || k > static_cast<uint32_t>(std::popcount(w))) return word_npos;
  const uint64_t rank = k - 1;

  // Byte-wise popcounts, then prefix sums across bytes.
  uint64_t s = w - ((w >> 1) & 0x5555555555555555ULL);
  s = (s & 0x3333333333333333ULL) + ((s >> 2) & 0x3333333333333333ULL);
  s = (s + (s >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
  const uint64_t byte_sums = s * ones_step_8;

  // Byte lanes whose inclusive prefix sum is <= rank.
  const uint64_t rank_step_8 = rank * ones_step_8;
  const uint64_t geq = ((rank_step_8 | msbs_step_8) - byte_sums) & msbs_step_8;
  const uint32_t place = static_cast<uint32_t>(std::popcount(geq)) * 8;
  const uint64_t byte_rank = rank - (((byte_sums << 8) >> place) & 0xFF);
  return place + select_in_byte[((w >> place) & 0xFF) | (byte_rank << 8)];
}

uint32_t portable_rank_in_block(const uint64_t* block, uint32_t j, uint32_t skip) noexcept {
  const uint32_t last = j >> 6;
  const uint64_t first_mask = ~uint64_t{0} << skip;
  uint32_t count = 0;
  if (last == 0) {
    return std::popcount((block[0] & first_mask) << (63 - (j & 63)));
  }
  count += std::popcount(block[0] & first_mask);
  for (uint32_t w = 1; w < last; ++w) count += std::popcount(block[w]);
  count += std::popcount(block[last] << (63 - (j & 63)));
  return count;
}

uint32_t portable_select_in_block(const uint64_t* block, uint32_t k, uint32_t skip) noexcept {
  if (k == 0) return block_npos;
  uint32_t seen = 0;
  for (uint32_t w = 0; w < block_words; ++w) {
    const uint64_t word = w == 0 ? block[0] & (~uint64_t{0} << skip) : block[w];
    const uint32_t ones = std::popcount(word);
    if (seen + ones >= k) return w * 64 + portable_select_in_word(word, k - seen);
    seen += ones;
  }
  return block_npos;
}

uint64_t portable_popcount(const uint64_t* words, std::size_t count) noexcept {
  uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(words[i]);
  return total;
}

const kernel_set& portable() noexcept {
  static const kernel_set set{"portable", portable_select_in_word, portable_rank_in_block,
                              portable_select_in_block, portable_popcount};
  return set;
}

}  // namespace spider::kernels
