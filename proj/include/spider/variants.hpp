#pragma once

// Structure registry: names, the (rank layout x select levels) grid, and a
// value type that holds any of the five structures behind one query surface.

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "spider/spider.hpp"
#include "spider/strawman.hpp"

namespace spider {

enum class structure_kind { spider, ni_spider, spider_1l_select, ni_spider_2l_select, strawman };

enum class rank_layout_kind { interleaved, flat };
enum class select_levels { one, two };

struct variant_config {
  rank_layout_kind rank_layout = rank_layout_kind::interleaved;
  select_levels levels = select_levels::two;
};

/// "spider", "ni-spider", "spider-1L-select", "ni-spider-2L-select", "strawman".
std::string_view name(structure_kind kind) noexcept;

/// Throws std::invalid_argument for unknown names.
structure_kind parse_structure(std::string_view name);

const std::vector<structure_kind>& all_structures();

/// The four SPIDER variants (everything except the strawman).
const std::vector<structure_kind>& predicting_structures();

structure_kind kind_of(variant_config config) noexcept;

class any_index {
 public:
  using storage = std::variant<spider_index, ni_spider_index, spider_1l_select_index, ni_spider_2l_select_index,
                               strawman_index>;

  any_index() = default;
  template <class Index>
  any_index(Index index) : index_(std::move(index)) {}

  structure_kind kind() const noexcept { return static_cast<structure_kind>(index_.index()); }

  uint64_t size() const {
    return std::visit([](const auto& idx) { return idx.size(); }, index_);
  }
  uint64_t ones() const {
    return std::visit([](const auto& idx) { return idx.ones(); }, index_);
  }
  uint64_t rank(uint64_t i) const {
    return std::visit([i](const auto& idx) { return idx.rank(i); }, index_);
  }
  uint64_t select(uint64_t j) const {
    return std::visit([j](const auto& idx) { return idx.select(j); }, index_);
  }
  select_result select_instrumented(uint64_t j) const {
    return std::visit([j](const auto& idx) { return idx.select_instrumented(j); }, index_);
  }
  space_report space() const {
    return std::visit([](const auto& idx) { return idx.space(); }, index_);
  }

  const storage& get() const noexcept { return index_; }

 private:
  storage index_;
};

/// Throws std::invalid_argument for an empty vector.
any_index build_structure(structure_kind kind, const bit_vector& bv, const kernels::kernel_set& ks = kernels::best());

any_index build_variant(const bit_vector& bv, variant_config config, const kernels::kernel_set& ks = kernels::best());

}  // namespace spider
