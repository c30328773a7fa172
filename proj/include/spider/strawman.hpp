#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "spider/bit_vector.hpp"
#include "spider/kernels.hpp"
#include "spider/rank_select_index.hpp"

namespace spider {

/// Baseline: a 64-bit cumulative count per 512-bit cache line, and the
/// position of every 8192nd one. Select scans the count array forward from
/// the sampled line.
class strawman_index {
 public:
  static constexpr uint64_t line_bits = 512;
  static constexpr uint64_t sigma = 8192;

  strawman_index() = default;

  explicit strawman_index(const bit_vector& bv, const kernels::kernel_set& ks = kernels::best())
      : n_(bv.size()), ks_(&ks) {
    if (n_ == 0) throw std::invalid_argument("strawman_index: empty bit vector");
    const uint64_t lines = (n_ + line_bits - 1) / line_bits;
    words_.assign(lines * block_words, 0);
    std::copy(bv.words().begin(), bv.words().end(), words_.begin());
    rank_.resize(lines + 1);
    uint64_t total = 0;
    for (uint64_t l = 0; l < lines; ++l) {
      rank_[l] = total;
      total += ks.popcount(words_.data() + l * block_words, block_words);
    }
    rank_[lines] = total;
    n1_ = total;

    if (n1_ == 0) return;
    select_.resize((n1_ - 1) / sigma + 1);
    select_cursor cursor(words_, ks);
    for (uint64_t i = 0; i < select_.size(); ++i) select_[i] = cursor.next(sigma * i + 1);
  }

  uint64_t size() const noexcept { return n_; }
  uint64_t ones() const noexcept { return n1_; }

  bool bit(uint64_t i) const {
    check_rank_query(i, n_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  uint64_t rank(uint64_t i) const {
    check_rank_query(i, n_);
    return rank_[i >> 9] + ks_->rank_in_block(words_.data() + (i >> 9) * block_words, i & 511, 0);
  }

  uint64_t select(uint64_t j) const { return select_instrumented(j).position; }

  /// wrong_blocks counts the cache lines the forward scan passed over.
  select_result select_instrumented(uint64_t j) const {
    check_select_query(j, n1_);
    const uint64_t start = select_[(j - 1) / sigma] / line_bits;
    uint64_t line = start;
    while (rank_[line + 1] < j) ++line;
    const block_span block(words_.data() + line * block_words, block_words);
    const uint64_t offset = spider::select_in_block(block, static_cast<uint32_t>(j - rank_[line]), 0, *ks_);
    return {line * line_bits + offset, line - start};
  }

  std::span<const uint64_t> rank_array() const noexcept { return rank_; }
  std::span<const uint64_t> select_array() const noexcept { return select_; }

  space_report space() const {
    return {n_, {{"rank_array", rank_.size() * 8}, {"select_array", select_.size() * 8}, {"bit_vector", words_.size() * 8}}};
  }

 private:
  uint64_t n_ = 0;
  uint64_t n1_ = 0;
  const kernels::kernel_set* ks_ = &kernels::portable();
  std::vector<uint64_t> rank_;
  std::vector<uint64_t> select_;
  aligned_vector<uint64_t> words_;
};

}  // namespace spider
