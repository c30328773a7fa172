#pragma once

// Sampled select structures and the interpolation that turns two samples into
// a predicted position. Both samplers are templates over a rank layout
// (interleaved_rank or flat_rank) and finish every query with the same
// prediction-anchored block scan over the layout's cumulative counts.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "spider/bit_vector.hpp"
#include "spider/kernels.hpp"
#include "spider/rank_layout.hpp"

namespace spider {

struct select_result {
  uint64_t position;
  /// Blocks the correction scan stepped over before reaching the answer's block.
  uint64_t wrong_blocks;
};

/// Smallest power of two P >= 1 with P * denominator >= numerator.
inline uint64_t pow2_at_least(unsigned __int128 numerator, unsigned __int128 denominator) {
  uint64_t p = 1;
  while (static_cast<unsigned __int128>(p) * denominator < numerator) p <<= 1;
  return p;
}

/// Signed division truncating toward zero; `divisor == 1 << shift` uses a shift.
inline int64_t divide_toward_zero(int64_t value, uint64_t divisor, unsigned shift) noexcept {
  if (divisor == (uint64_t{1} << shift)) return value >= 0 ? value >> shift : -((-value) >> shift);
  return value / static_cast<int64_t>(divisor);
}

/// Interpolated select prediction from two superblock offsets.
///
/// `a` is the offset of the sample with rank `sample_rank` = sigma * l, `b` the
/// offset of the next sample, `span_ones` the number of ones between them
/// (sigma, except in the final partial segment). When b < a the two samples
/// sit in neighbouring superblocks: if superblock s already starts after the
/// lower sample (ones_before_s >= sample_rank) then a is rebased into the
/// previous superblock, otherwise b is rebased into the next one.
inline int64_t interpolate_two_level(int64_t superblock_bits, uint64_t s, int64_t a, int64_t b,
                                     uint64_t span_ones, unsigned sigma_shift, uint64_t sample_rank,
                                     uint64_t j, uint64_t ones_before_s) noexcept {
  if (b < a) {
    if (ones_before_s >= sample_rank) {
      a -= superblock_bits;
    } else {
      b += superblock_bits;
    }
  }
  int64_t step = 0;
  if (span_ones != 0) {
    step = divide_toward_zero((b - a) * static_cast<int64_t>(j - sample_rank), span_ones, sigma_shift);
  }
  return superblock_bits * static_cast<int64_t>(s) + a + step;
}

/// Streams select(j) for nondecreasing j over a plain word sequence.
class select_cursor {
 public:
  select_cursor(std::span<const uint64_t> words, const kernels::kernel_set& ks) : words_(words), ks_(&ks) {}

  uint64_t next(uint64_t j) {
    uint64_t ones = std::popcount(words_[word_]);
    while (before_ + ones < j) {
      before_ += ones;
      ones = std::popcount(words_[++word_]);
    }
    return word_ * 64 + ks_->select_in_word(words_[word_], static_cast<uint32_t>(j - before_));
  }

 private:
  std::span<const uint64_t> words_;
  const kernels::kernel_set* ks_;
  uint64_t word_ = 0;
  uint64_t before_ = 0;
};

namespace detail {

/// Scan from block `start` to the block holding the j-th one, then select in it.
template <class Layout>
select_result finish_in_block(const Layout& layout, uint64_t j, uint64_t start) {
  uint64_t b = start;
  while (layout.ones_before_block(b) >= j) --b;
  const uint64_t last = layout.block_count() - 1;
  while (b < last && layout.ones_through_block(b) < j) ++b;
  const uint64_t before = layout.ones_before_block(b);
  return {layout.select_in_block(b, static_cast<uint32_t>(j - before)), b > start ? b - start : start - b};
}

inline uint64_t clamp_u64(int64_t value, uint64_t lo, uint64_t hi) noexcept {
  if (value < static_cast<int64_t>(lo)) return lo;
  if (static_cast<uint64_t>(value) > hi) return hi;
  return static_cast<uint64_t>(value);
}

}  // namespace detail

/// Two-level select: a 64-bit array of superblock guesses sampled every
/// sigma_high ones, and a 16-bit array of superblock offsets sampled every
/// sigma_low ones.
template <class Layout>
class two_level_select {
 public:
  static constexpr uint64_t superblock_bits = Layout::superblock_bits;
  static_assert(superblock_bits <= 65536, "low-level samples must fit 16 bits");

  struct prediction {
    int64_t position;  // clamped to [0, padded_size - 1]
    uint64_t low_index;
  };

  two_level_select() = default;

  /// Second scan over `bv` (the vector `layout` was built from).
  two_level_select(const Layout& layout, const bit_vector& bv) {
    const uint64_t n = layout.size();
    const uint64_t n1 = layout.ones();
    if (n1 == 0) return;
    sigma_high_ = pow2_at_least(static_cast<unsigned __int128>(superblock_bits) * n1, n);
    // 4096 * 0.99 * n1 / n, kept exact in integers.
    sigma_low_ = pow2_at_least(static_cast<unsigned __int128>(405504) * n1, static_cast<unsigned __int128>(n) * 100);
    set_shifts();

    const uint64_t high_samples = (n1 - 1) / sigma_high_;
    high_.resize(high_samples + 2);
    select_cursor high_cursor(bv.words(), layout.kernels());
    high_[0] = nearest_superblock(high_cursor.next(1));
    for (uint64_t i = 1; i <= high_samples; ++i) high_[i] = nearest_superblock(high_cursor.next(i * sigma_high_ + 1));
    high_.back() = layout.superblock_count() - 1;

    const uint64_t low_samples = n1 / sigma_low_;
    low_.resize(low_samples + 2);
    select_cursor low_cursor(bv.words(), layout.kernels());
    low_[0] = 0;
    for (uint64_t i = 1; i <= low_samples; ++i) low_[i] = superblock_offset(low_cursor.next(i * sigma_low_));
    low_.back() = superblock_offset(low_cursor.next(n1));
  }

  /// Throws std::invalid_argument on inconsistent sizes or thresholds.
  static two_level_select from_parts(const Layout& layout, uint64_t sigma_high, uint64_t sigma_low,
                                     std::vector<uint64_t> high, std::vector<uint16_t> low) {
    const uint64_t n1 = layout.ones();
    if (!std::has_single_bit(sigma_high) || !std::has_single_bit(sigma_low)) {
      throw std::invalid_argument("two_level_select: thresholds must be powers of two");
    }
    const bool sizes_ok = n1 == 0 ? high.empty() && low.empty()
                                  : high.size() == (n1 - 1) / sigma_high + 2 && low.size() == n1 / sigma_low + 2;
    if (!sizes_ok) throw std::invalid_argument("two_level_select: sample array sizes do not match");
    two_level_select sampler;
    sampler.sigma_high_ = sigma_high;
    sampler.sigma_low_ = sigma_low;
    sampler.set_shifts();
    sampler.high_ = std::move(high);
    sampler.low_ = std::move(low);
    return sampler;
  }

  uint64_t sigma_high() const noexcept { return sigma_high_; }
  uint64_t sigma_low() const noexcept { return sigma_low_; }
  std::span<const uint64_t> high() const noexcept { return high_; }
  std::span<const uint16_t> low() const noexcept { return low_; }

  /// Walk from s0 to the superblock s with ones_before(s) < j <= ones_before(s+1).
  uint64_t find_superblock(const Layout& layout, uint64_t j, uint64_t s0) const noexcept {
    uint64_t s = s0;
    while (j <= layout.ones_before_superblock(s)) --s;
    while (j > layout.ones_before_superblock(s + 1)) ++s;
    return s;
  }

  prediction predict(const Layout& layout, uint64_t j, uint64_t s) const noexcept {
    const uint64_t l = (j - 1) >> low_shift_;
    const uint64_t sample_rank = l << low_shift_;
    // The last entry samples the final one rather than the next multiple of sigma_low.
    const uint64_t span = l + 2 == low_.size() ? layout.ones() - sample_rank : sigma_low_;
    const int64_t p = interpolate_two_level(static_cast<int64_t>(superblock_bits), s, low_[l], low_[l + 1], span,
                                            low_shift_, sample_rank, j, layout.ones_before_superblock(s));
    const int64_t last = static_cast<int64_t>(layout.padded_size()) - 1;
    return {p < 0 ? 0 : (p > last ? last : p), l};
  }

  /// 1 <= j <= ones(); validated by the owning index.
  select_result select(const Layout& layout, uint64_t j) const {
    uint64_t s0 = high_[(j - 1) >> high_shift_];
    if (s0 >= layout.superblock_count()) s0 = layout.superblock_count() - 1;
    const uint64_t s = find_superblock(layout, j, s0);
    const prediction pred = predict(layout, j, s);
    // The answer is known to be inside superblock s.
    const uint64_t first = s * Layout::blocks_per_superblock;
    const uint64_t start = detail::clamp_u64(pred.position / static_cast<int64_t>(Layout::block_payload_bits), first,
                                             first + Layout::blocks_per_superblock - 1);
    return detail::finish_in_block(layout, j, start);
  }

  std::vector<space_component> space() const {
    return {{"high_select", high_.size() * 8}, {"low_select", low_.size() * 2}};
  }

 private:
  static uint64_t nearest_superblock(uint64_t pos) noexcept { return (pos + superblock_bits / 2) / superblock_bits; }
  static uint16_t superblock_offset(uint64_t pos) noexcept { return static_cast<uint16_t>(pos % superblock_bits); }

  void set_shifts() noexcept {
    high_shift_ = static_cast<unsigned>(std::countr_zero(sigma_high_));
    low_shift_ = static_cast<unsigned>(std::countr_zero(sigma_low_));
  }

  uint64_t sigma_high_ = 1;
  uint64_t sigma_low_ = 1;
  unsigned high_shift_ = 0;
  unsigned low_shift_ = 0;
  std::vector<uint64_t> high_;
  std::vector<uint16_t> low_;
};

/// Single-level select: absolute positions of every sigma-th one.
template <class Layout>
class one_level_select {
 public:
  one_level_select() = default;

  one_level_select(const Layout& layout, const bit_vector& bv) {
    const uint64_t n1 = layout.ones();
    if (n1 == 0) return;
    sigma_ = pow2_at_least(static_cast<unsigned __int128>(16384) * n1, layout.size());
    shift_ = static_cast<unsigned>(std::countr_zero(sigma_));
    const uint64_t samples = n1 / sigma_;
    samples_.resize(samples + 2);
    select_cursor cursor(bv.words(), layout.kernels());
    samples_[0] = 0;
    for (uint64_t i = 1; i <= samples; ++i) samples_[i] = cursor.next(i * sigma_);
    samples_.back() = cursor.next(n1);
  }

  static one_level_select from_parts(const Layout& layout, uint64_t sigma, std::vector<uint64_t> samples) {
    const uint64_t n1 = layout.ones();
    if (!std::has_single_bit(sigma)) throw std::invalid_argument("one_level_select: sigma must be a power of two");
    const bool size_ok = n1 == 0 ? samples.empty() : samples.size() == n1 / sigma + 2;
    if (!size_ok) throw std::invalid_argument("one_level_select: sample array size does not match");
    if (!std::is_sorted(samples.begin(), samples.end()) || (!samples.empty() && samples.back() >= layout.size())) {
      throw std::invalid_argument("one_level_select: samples must be nondecreasing positions below n");
    }
    one_level_select sampler;
    sampler.sigma_ = sigma;
    sampler.shift_ = static_cast<unsigned>(std::countr_zero(sigma));
    sampler.samples_ = std::move(samples);
    return sampler;
  }

  uint64_t sigma() const noexcept { return sigma_; }
  std::span<const uint64_t> samples() const noexcept { return samples_; }

  /// Interpolated position, clamped to [0, padded_size - 1].
  int64_t predict(const Layout& layout, uint64_t j) const noexcept {
    const uint64_t idx = j >> shift_;
    const uint64_t sample_rank = idx << shift_;
    const uint64_t span = idx + 2 == samples_.size() ? layout.ones() - sample_rank : sigma_;
    const uint64_t a = samples_[idx];
    const uint64_t b = samples_[idx + 1];
    uint64_t step = 0;
    if (span != 0) {
      const auto scaled = static_cast<unsigned __int128>(b - a) * (j - sample_rank);
      step = span == sigma_ ? static_cast<uint64_t>(scaled >> shift_) : static_cast<uint64_t>(scaled / span);
    }
    const uint64_t last = layout.padded_size() - 1;
    return static_cast<int64_t>(std::min(a + step, last));
  }

  select_result select(const Layout& layout, uint64_t j) const {
    const uint64_t start = static_cast<uint64_t>(predict(layout, j)) / Layout::block_payload_bits;
    return detail::finish_in_block(layout, j, std::min(start, layout.block_count() - 1));
  }

  std::vector<space_component> space() const { return {{"select_array", samples_.size() * 8}}; }

 private:
  uint64_t sigma_ = 1;
  unsigned shift_ = 0;
  std::vector<uint64_t> samples_;
};

}  // namespace spider
