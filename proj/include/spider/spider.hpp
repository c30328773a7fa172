#pragma once

#include "spider/rank_select_index.hpp"

namespace spider {

/// Interleaved local ranks, two-level select samples.
using spider_index = rank_select_index<interleaved_rank, two_level_select>;

/// Flat two-level rank arrays over the untouched vector, one-level select.
using ni_spider_index = rank_select_index<flat_rank, one_level_select>;

/// Interleaved local ranks with the one-level select array.
using spider_1l_select_index = rank_select_index<interleaved_rank, one_level_select>;

/// Flat rank arrays with the two-level select arrays.
using ni_spider_2l_select_index = rank_select_index<flat_rank, two_level_select>;

}  // namespace spider
