#pragma once

// The two rank layouts SPIDER-style indexes are built from.
//
// interleaved_rank: 63488-bit superblocks with a 64-bit cumulative count each,
// and the bit vector rewritten as 512-bit basic blocks that carry a 16-bit
// local rank followed by 496 payload bits. The original vector is not kept.
//
// flat_rank: 65536-bit superblocks (64-bit counts), a separate array of 16-bit
// local ranks for every 512-bit block, and an untouched (padded) copy of the
// bit vector.
//
// Both expose the same query surface so the select samplers can be written
// once against either.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "spider/bit_vector.hpp"
#include "spider/kernels.hpp"

namespace spider {

struct space_component {
  const char* name;
  uint64_t bytes;
};

class interleaved_rank {
 public:
  static constexpr uint64_t superblock_bits = 63488;
  static constexpr uint64_t block_payload_bits = 496;
  static constexpr uint64_t blocks_per_superblock = 128;
  static constexpr uint32_t local_rank_bits = 16;
  static_assert(superblock_bits == blocks_per_superblock * block_payload_bits);
  static_assert(block_payload_bits + local_rank_bits == block_bits);

  interleaved_rank() = default;

  /// One linear scan fills the superblock counts and the modified vector.
  /// Throws std::invalid_argument for an empty vector.
  explicit interleaved_rank(const bit_vector& bv, const kernels::kernel_set& ks = kernels::best())
      : n_(bv.size()), ks_(&ks) {
    if (n_ == 0) throw std::invalid_argument("interleaved_rank: empty bit vector");
    const uint64_t superblocks = (n_ + superblock_bits - 1) / superblock_bits;
    const uint64_t blocks = superblocks * blocks_per_superblock;
    rank_array_.resize(superblocks + 1);
    modified_.resize(blocks * block_words);

    const auto words = bv.words();
    uint64_t total = 0;
    uint64_t local = 0;
    for (uint64_t b = 0; b < blocks; ++b) {
      if (b % blocks_per_superblock == 0) {
        rank_array_[b / blocks_per_superblock] = total;
        local = 0;
      }
      const uint64_t base = b * block_payload_bits;
      uint64_t* block = modified_.data() + b * block_words;
      block[0] = local | (extract_word(words, base) << local_rank_bits);
      for (uint32_t w = 1; w < block_words; ++w) {
        block[w] = extract_word(words, base + 48 + 64 * (w - 1));
      }
      const uint64_t ones = std::popcount(block[0] >> local_rank_bits) + ks.popcount(block + 1, block_words - 1);
      local += ones;
      total += ones;
    }
    rank_array_[superblocks] = total;
    n1_ = total;
  }

  /// Reassembles a layout from stored arrays; throws std::invalid_argument
  /// when the array sizes or the sentinel do not match n.
  static interleaved_rank from_parts(uint64_t n, std::vector<uint64_t> rank_array,
                                     aligned_vector<uint64_t> modified,
                                     const kernels::kernel_set& ks = kernels::best()) {
    if (n == 0) throw std::invalid_argument("interleaved_rank: empty bit vector");
    const uint64_t superblocks = (n + superblock_bits - 1) / superblock_bits;
    if (rank_array.size() != superblocks + 1 ||
        modified.size() != superblocks * blocks_per_superblock * block_words) {
      throw std::invalid_argument("interleaved_rank: array sizes do not match bit count");
    }
    interleaved_rank layout;
    layout.n_ = n;
    layout.n1_ = rank_array.back();
    layout.ks_ = &ks;
    layout.rank_array_ = std::move(rank_array);
    layout.modified_ = std::move(modified);
    return layout;
  }

  uint64_t size() const noexcept { return n_; }
  uint64_t ones() const noexcept { return n1_; }
  uint64_t padded_size() const noexcept { return superblock_count() * superblock_bits; }
  uint64_t superblock_count() const noexcept { return rank_array_.size() - 1; }
  uint64_t block_count() const noexcept { return modified_.size() / block_words; }
  const kernels::kernel_set& kernels() const noexcept { return *ks_; }

  /// Ones in [0, i]; i < padded_size(). One division (by 496) and one shift.
  uint64_t rank(uint64_t i) const noexcept {
    const uint64_t b = i / block_payload_bits;
    const uint32_t offset = static_cast<uint32_t>(i - b * block_payload_bits);
    return rank_array_[b >> 7] + local_rank(b) +
           ks_->rank_in_block(block_ptr(b), local_rank_bits + offset, local_rank_bits);
  }

  bool bit(uint64_t i) const noexcept {
    const uint64_t b = i / block_payload_bits;
    const uint64_t pos = local_rank_bits + (i - b * block_payload_bits);
    return (block_ptr(b)[pos >> 6] >> (pos & 63)) & 1;
  }

  /// s <= superblock_count(); the last entry is the n1 sentinel.
  uint64_t ones_before_superblock(uint64_t s) const noexcept { return rank_array_[s]; }

  uint16_t local_rank(uint64_t b) const noexcept { return static_cast<uint16_t>(modified_[b * block_words]); }

  /// b <= block_count(); block_count() itself answers n1.
  uint64_t ones_before_block(uint64_t b) const noexcept {
    if (b == block_count()) return n1_;
    return rank_array_[b >> 7] + local_rank(b);
  }

  /// Ones before the end of block b, b < block_count(). Counted from the
  /// block itself so a scan never touches the next cache line.
  uint64_t ones_through_block(uint64_t b) const noexcept {
    const uint64_t* block = block_ptr(b);
    uint64_t ones = std::popcount(block[0] >> local_rank_bits);
    for (uint32_t w = 1; w < block_words; ++w) ones += std::popcount(block[w]);
    return ones_before_block(b) + ones;
  }

  /// Absolute position of the k-th one inside block b.
  uint64_t select_in_block(uint64_t b, uint32_t k) const {
    return b * block_payload_bits + (spider::select_in_block(block(b), k, local_rank_bits, *ks_) - local_rank_bits);
  }

  block_span block(uint64_t b) const noexcept { return block_span(block_ptr(b), block_words); }
  std::span<const uint64_t> rank_array() const noexcept { return rank_array_; }
  std::span<const uint64_t> modified_words() const noexcept { return modified_; }

  std::vector<space_component> space() const {
    return {{"rank_array", rank_array_.size() * 8}, {"modified_bit_vector", modified_.size() * 8}};
  }

 private:
  const uint64_t* block_ptr(uint64_t b) const noexcept { return modified_.data() + b * block_words; }

  uint64_t n_ = 0;
  uint64_t n1_ = 0;
  const kernels::kernel_set* ks_ = &kernels::portable();
  std::vector<uint64_t> rank_array_;
  aligned_vector<uint64_t> modified_;
};

class flat_rank {
 public:
  static constexpr uint64_t superblock_bits = 65536;
  static constexpr uint64_t block_payload_bits = 512;
  static constexpr uint64_t blocks_per_superblock = 128;
  static_assert(superblock_bits == blocks_per_superblock * block_payload_bits);

  flat_rank() = default;

  explicit flat_rank(const bit_vector& bv, const kernels::kernel_set& ks = kernels::best())
      : n_(bv.size()), ks_(&ks) {
    if (n_ == 0) throw std::invalid_argument("flat_rank: empty bit vector");
    const uint64_t superblocks = (n_ + superblock_bits - 1) / superblock_bits;
    const uint64_t blocks = superblocks * blocks_per_superblock;
    words_.resize(blocks * block_words);
    const auto tail = std::copy(bv.words().begin(), bv.words().end(), words_.begin());
    std::fill(tail, words_.end(), 0);
    l1_.resize(superblocks + 1);
    l2_.resize(blocks);

    uint64_t total = 0;
    uint64_t local = 0;
    for (uint64_t b = 0; b < blocks; ++b) {
      if (b % blocks_per_superblock == 0) {
        l1_[b / blocks_per_superblock] = total;
        local = 0;
      }
      l2_[b] = static_cast<uint16_t>(local);
      const uint64_t ones = ks.popcount(words_.data() + b * block_words, block_words);
      local += ones;
      total += ones;
    }
    l1_[superblocks] = total;
    n1_ = total;
  }

  static flat_rank from_parts(uint64_t n, std::vector<uint64_t> l1, std::vector<uint16_t> l2,
                              aligned_vector<uint64_t> words, const kernels::kernel_set& ks = kernels::best()) {
    if (n == 0) throw std::invalid_argument("flat_rank: empty bit vector");
    const uint64_t superblocks = (n + superblock_bits - 1) / superblock_bits;
    const uint64_t blocks = superblocks * blocks_per_superblock;
    if (l1.size() != superblocks + 1 || l2.size() != blocks || words.size() != blocks * block_words) {
      throw std::invalid_argument("flat_rank: array sizes do not match bit count");
    }
    flat_rank layout;
    layout.n_ = n;
    layout.n1_ = l1.back();
    layout.ks_ = &ks;
    layout.l1_ = std::move(l1);
    layout.l2_ = std::move(l2);
    layout.words_ = std::move(words);
    return layout;
  }

  uint64_t size() const noexcept { return n_; }
  uint64_t ones() const noexcept { return n1_; }
  uint64_t padded_size() const noexcept { return superblock_count() * superblock_bits; }
  uint64_t superblock_count() const noexcept { return l1_.size() - 1; }
  uint64_t block_count() const noexcept { return l2_.size(); }
  const kernels::kernel_set& kernels() const noexcept { return *ks_; }

  uint64_t rank(uint64_t i) const noexcept {
    const uint64_t b = i >> 9;
    return l1_[i >> 16] + l2_[b] + ks_->rank_in_block(words_.data() + b * block_words, i & 511, 0);
  }

  bool bit(uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

  uint64_t ones_before_superblock(uint64_t s) const noexcept { return l1_[s]; }
  uint16_t local_rank(uint64_t b) const noexcept { return l2_[b]; }

  uint64_t ones_before_block(uint64_t b) const noexcept {
    if (b == block_count()) return n1_;
    return l1_[b >> 7] + l2_[b];
  }

  uint64_t ones_through_block(uint64_t b) const noexcept { return ones_before_block(b + 1); }

  uint64_t select_in_block(uint64_t b, uint32_t k) const {
    return b * block_payload_bits + spider::select_in_block(block(b), k, 0, *ks_);
  }

  block_span block(uint64_t b) const noexcept { return block_span(words_.data() + b * block_words, block_words); }
  std::span<const uint64_t> l1_rank() const noexcept { return l1_; }
  std::span<const uint16_t> l2_rank() const noexcept { return l2_; }
  std::span<const uint64_t> words() const noexcept { return words_; }

  std::vector<space_component> space() const {
    return {{"l1_rank", l1_.size() * 8}, {"l2_rank", l2_.size() * 2}, {"bit_vector", words_.size() * 8}};
  }

 private:
  uint64_t n_ = 0;
  uint64_t n1_ = 0;
  const kernels::kernel_set* ks_ = &kernels::portable();
  std::vector<uint64_t> l1_;
  std::vector<uint16_t> l2_;
  aligned_vector<uint64_t> words_;
};

}  // namespace spider
