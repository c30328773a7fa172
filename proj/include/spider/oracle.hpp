#pragma once

// Trivially-correct rank/select used as ground truth. Nothing here touches
// the kernel layer: counting is done either bit by bit or with std::popcount
// over whole words.

#include <cstdint>
#include <span>
#include <vector>

#include "spider/bit_vector.hpp"

namespace spider::oracle {

/// Ones in positions [0, i]. Throws std::out_of_range for i >= size().
uint64_t rank(const bit_vector& bv, uint64_t i);

/// rank() extended to signed positions with rank(-1) = 0 (and any negative
/// position), which is how "ones before position x" is written as rank(x-1).
uint64_t rank_signed(const bit_vector& bv, int64_t i);

/// Position of the j-th one (1-based). Throws std::out_of_range unless
/// 1 <= j <= ones().
uint64_t select(const bit_vector& bv, uint64_t j);

/// Answers for many queries in one sweep. Inputs must be sorted ascending.
std::vector<uint64_t> rank_sorted(const bit_vector& bv, std::span<const uint64_t> positions);
std::vector<uint64_t> select_sorted(const bit_vector& bv, std::span<const uint64_t> ranks);

/// Exhaustive answer tables built by one bit-at-a-time pass; used for
/// full-vector verification.
class table {
 public:
  explicit table(const bit_vector& bv);

  uint64_t rank(uint64_t i) const { return rank_[i]; }
  uint64_t select(uint64_t j) const { return ones_[j - 1]; }
  uint64_t size() const { return rank_.size(); }
  uint64_t ones() const { return ones_.size(); }
  std::span<const uint64_t> one_positions() const { return ones_; }

 private:
  std::vector<uint64_t> rank_;
  std::vector<uint64_t> ones_;
};

}  // namespace spider::oracle
