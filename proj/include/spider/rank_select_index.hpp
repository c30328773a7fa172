#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spider/bit_vector.hpp"
#include "spider/errors.hpp"
#include "spider/kernels.hpp"
#include "spider/rank_layout.hpp"
#include "spider/select_sampling.hpp"

namespace spider {

struct space_report {
  uint64_t bits = 0;  // logical length n
  std::vector<space_component> components;

  uint64_t total_bytes() const noexcept {
    uint64_t total = 0;
    for (const auto& c : components) total += c.bytes;
    return total;
  }
  /// Stored bits beyond the n payload bits (padding included).
  uint64_t overhead_bits() const noexcept { return total_bytes() * 8 - bits; }
  double overhead_percent() const noexcept { return 100.0 * static_cast<double>(overhead_bits()) / static_cast<double>(bits); }
};

inline void check_rank_query(uint64_t i, uint64_t n) {
  if (i >= n) throw std::out_of_range("rank: position " + std::to_string(i) + " >= " + std::to_string(n));
}

inline void check_select_query(uint64_t j, uint64_t n1) {
  if (n1 == 0) throw empty_select_error("select: bit vector has no one bits");
  if (j == 0 || j > n1) {
    throw std::out_of_range("select: rank " + std::to_string(j) + " outside [1, " + std::to_string(n1) + "]");
  }
}

/// A rank layout paired with a select sampler. The four combinations are
/// the SPIDER family; see spider.hpp for their names.
template <class Layout, template <class> class Sampler>
class rank_select_index {
 public:
  using layout_type = Layout;
  using sampler_type = Sampler<Layout>;

  rank_select_index() = default;

  /// Throws std::invalid_argument for an empty vector.
  explicit rank_select_index(const bit_vector& bv, const kernels::kernel_set& ks = kernels::best())
      : layout_(bv, ks), sampler_(layout_, bv) {}

  rank_select_index(Layout layout, sampler_type sampler) : layout_(std::move(layout)), sampler_(std::move(sampler)) {}

  uint64_t size() const noexcept { return layout_.size(); }
  uint64_t ones() const noexcept { return layout_.ones(); }

  bool bit(uint64_t i) const {
    check_rank_query(i, size());
    return layout_.bit(i);
  }

  /// Ones in [0, i].
  uint64_t rank(uint64_t i) const {
    check_rank_query(i, size());
    return layout_.rank(i);
  }

  /// Position of the j-th one, 1 <= j <= ones().
  uint64_t select(uint64_t j) const { return select_instrumented(j).position; }

  select_result select_instrumented(uint64_t j) const {
    check_select_query(j, ones());
    return sampler_.select(layout_, j);
  }

  space_report space() const {
    space_report report{size(), layout_.space()};
    for (const auto& c : sampler_.space()) report.components.push_back(c);
    return report;
  }

  const Layout& layout() const noexcept { return layout_; }
  const sampler_type& sampler() const noexcept { return sampler_; }

 private:
  Layout layout_;
  sampler_type sampler_;
};

}  // namespace spider
