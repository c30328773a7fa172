#include "spider/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace spider::oracle {

uint64_t rank(const bit_vector& bv, uint64_t i) {
  if (i >= bv.size()) {
    throw std::out_of_range("oracle::rank: position " + std::to_string(i) + " >= " + std::to_string(bv.size()));
  }
  const auto words = bv.words();
  uint64_t count = 0;
  const uint64_t last = i >> 6;
  for (uint64_t w = 0; w < last; ++w) count += std::popcount(words[w]);
  count += std::popcount(words[last] << (63 - (i & 63)));
  return count;
}

uint64_t rank_signed(const bit_vector& bv, int64_t i) {
  return i < 0 ? 0 : rank(bv, static_cast<uint64_t>(i));
}

uint64_t select(const bit_vector& bv, uint64_t j) {
  if (j == 0 || j > bv.ones()) {
    throw std::out_of_range("oracle::select: rank " + std::to_string(j) + " outside [1, " +
                            std::to_string(bv.ones()) + "]");
  }
  const auto words = bv.words();
  uint64_t seen = 0;
  for (uint64_t w = 0; w < words.size(); ++w) {
    const uint64_t ones = std::popcount(words[w]);
    if (seen + ones >= j) {
      for (uint32_t bit = 0; bit < 64; ++bit) {
        if ((words[w] >> bit) & 1) {
          if (++seen == j) return w * 64 + bit;
        }
      }
    }
    seen += ones;
  }
  throw std::logic_error("oracle::select: ones count inconsistent with words");
}

std::vector<uint64_t> rank_sorted(const bit_vector& bv, std::span<const uint64_t> positions) {
  if (!std::is_sorted(positions.begin(), positions.end())) {
    throw std::invalid_argument("oracle::rank_sorted: positions must be sorted");
  }
  if (!positions.empty() && positions.back() >= bv.size()) {
    throw std::out_of_range("oracle::rank_sorted: position out of range");
  }
  std::vector<uint64_t> out;
  out.reserve(positions.size());
  const auto words = bv.words();
  uint64_t word = 0;
  uint64_t before_word = 0;  // ones in words [0, word)
  for (uint64_t pos : positions) {
    for (; word < (pos >> 6); ++word) before_word += std::popcount(words[word]);
    out.push_back(before_word + std::popcount(words[word] << (63 - (pos & 63))));
  }
  return out;
}

std::vector<uint64_t> select_sorted(const bit_vector& bv, std::span<const uint64_t> ranks) {
  if (!std::is_sorted(ranks.begin(), ranks.end())) {
    throw std::invalid_argument("oracle::select_sorted: ranks must be sorted");
  }
  if (!ranks.empty() && (ranks.front() == 0 || ranks.back() > bv.ones())) {
    throw std::out_of_range("oracle::select_sorted: rank out of range");
  }
  std::vector<uint64_t> out;
  out.reserve(ranks.size());
  const auto words = bv.words();
  uint64_t word = 0;
  uint64_t before_word = 0;
  for (uint64_t j : ranks) {
    while (before_word + std::popcount(words[word]) < j) before_word += std::popcount(words[word++]);
    uint64_t seen = before_word;
    for (uint32_t bit = 0; bit < 64; ++bit) {
      if (((words[word] >> bit) & 1) && ++seen == j) {
        out.push_back(word * 64 + bit);
        break;
      }
    }
  }
  return out;
}

table::table(const bit_vector& bv) {
  rank_.resize(bv.size());
  ones_.reserve(bv.ones());
  uint64_t count = 0;
  for (uint64_t i = 0; i < bv.size(); ++i) {
    if (bv[i]) {
      ++count;
      ones_.push_back(i);
    }
    rank_[i] = count;
  }
}

}  // namespace spider::oracle
