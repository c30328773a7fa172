#pragma once

#include "spider/kernels.hpp"

namespace spider::kernels {

uint32_t portable_select_in_word(uint64_t w, uint32_t k) noexcept;
uint32_t portable_rank_in_block(const uint64_t* block, uint32_t j, uint32_t skip) noexcept;
uint32_t portable_select_in_block(const uint64_t* block, uint32_t k, uint32_t skip) noexcept;
uint64_t portable_popcount(const uint64_t* words, std::size_t count) noexcept;

#if defined(SPIDER_HAVE_X86_KERNELS)
const kernel_set& bmi2_set() noexcept;
const kernel_set& avx2_set() noexcept;
#endif

}  // namespace spider::kernels
