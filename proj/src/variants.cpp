#include "spider/variants.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace spider {

namespace {

constexpr std::array<std::string_view, 5> structure_names{"spider", "ni-spider", "spider-1L-select",
                                                          "ni-spider-2L-select", "strawman"};

}  // namespace

std::string_view name(structure_kind kind) noexcept { return structure_names[static_cast<std::size_t>(kind)]; }

structure_kind parse_structure(std::string_view text) {
  for (std::size_t i = 0; i < structure_names.size(); ++i) {
    if (structure_names[i] == text) return static_cast<structure_kind>(i);
  }
  throw std::invalid_argument("unknown structure: " + std::string(text));
}

const std::vector<structure_kind>& all_structures() {
  static const std::vector<structure_kind> kinds{structure_kind::spider, structure_kind::ni_spider,
                                                 structure_kind::spider_1l_select, structure_kind::ni_spider_2l_select,
                                                 structure_kind::strawman};
  return kinds;
}

const std::vector<structure_kind>& predicting_structures() {
  static const std::vector<structure_kind> kinds{structure_kind::spider, structure_kind::ni_spider,
                                                 structure_kind::spider_1l_select,
                                                 structure_kind::ni_spider_2l_select};
  return kinds;
}

structure_kind kind_of(variant_config config) noexcept {
  if (config.rank_layout == rank_layout_kind::interleaved) {
    return config.levels == select_levels::two ? structure_kind::spider : structure_kind::spider_1l_select;
  }
  return config.levels == select_levels::one ? structure_kind::ni_spider : structure_kind::ni_spider_2l_select;
}

any_index build_structure(structure_kind kind, const bit_vector& bv, const kernels::kernel_set& ks) {
  switch (kind) {
    case structure_kind::spider:
      return spider_index(bv, ks);
    case structure_kind::ni_spider:
      return ni_spider_index(bv, ks);
    case structure_kind::spider_1l_select:
      return spider_1l_select_index(bv, ks);
    case structure_kind::ni_spider_2l_select:
      return ni_spider_2l_select_index(bv, ks);
    case structure_kind::strawman:
      return strawman_index(bv, ks);
  }
  throw std::invalid_argument("build_structure: unknown structure kind");
}

any_index build_variant(const bit_vector& bv, variant_config config, const kernels::kernel_set& ks) {
  return build_structure(kind_of(config), bv, ks);
}

}  // namespace spider
