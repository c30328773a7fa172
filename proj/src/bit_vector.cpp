#include "spider/bit_vector.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace spider {

namespace {

uint64_t count_ones(std::span<const uint64_t> words) {
  uint64_t total = 0;
  for (uint64_t w : words) total += std::popcount(w);
  return total;
}

}  // namespace

bit_vector::bit_vector(uint64_t n, bool value)
    : n_(n), words_(words_for_bits(n), value ? ~uint64_t{0} : uint64_t{0}) {
  if (value && (n & 63) != 0) words_.back() = (uint64_t{1} << (n & 63)) - 1;
  n1_ = value ? n : 0;
}

bit_vector::bit_vector(uint64_t n, std::vector<uint64_t> words) : n_(n), words_(std::move(words)) {
  if (words_.size() != words_for_bits(n)) {
    throw std::invalid_argument("bit_vector: expected " + std::to_string(words_for_bits(n)) +
                                " words for " + std::to_string(n) + " bits, got " +
                                std::to_string(words_.size()));
  }
  if ((n & 63) != 0 && (words_.back() >> (n & 63)) != 0) {
    throw std::invalid_argument("bit_vector: bits past the logical length are set");
  }
  n1_ = count_ones(words_);
}

bit_vector bit_vector::from_string(std::string_view bits) {
  std::vector<uint64_t> words(words_for_bits(bits.size()), 0);
  for (uint64_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      words[i >> 6] |= uint64_t{1} << (i & 63);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit_vector::from_string: unexpected character");
    }
  }
  return bit_vector(bits.size(), std::move(words));
}

bool bit_vector::get(uint64_t i) const {
  if (i >= n_) {
    throw std::out_of_range("bit_vector::get: index " + std::to_string(i) + " >= size " +
                            std::to_string(n_));
  }
  return (*this)[i];
}

}  // namespace spider
