#pragma once

// Binary formats, all little-endian.
//
//   SPBV  bit vector:   "SPBV" u32 version=1, u64 n, ceil(n/64) u64 words.
//   SPIX  spider index: "SPIX" u32 version=1, u64 n, n1, sigma_high, sigma_low,
//                       then rank_array, modified bit vector, high_select,
//                       low_select, each as u64 count + elements.
//   NIIX  ni-spider:    "NIIX" u32 version=1, u64 n, n1, sigma, then l1_rank,
//                       l2_rank, select_array, padded bit vector words, each
//                       as u64 count + elements.
//
// Readers throw spider::format_error on bad magic, version, sizes, trailing
// bits or truncation.

#include <filesystem>
#include <iosfwd>

#include "spider/bit_vector.hpp"
#include "spider/spider.hpp"

namespace spider {

inline constexpr uint32_t format_version = 1;

void write_bit_vector(std::ostream& out, const bit_vector& bv);
bit_vector read_bit_vector(std::istream& in);
void save_bit_vector(const bit_vector& bv, const std::filesystem::path& path);
bit_vector load_bit_vector(const std::filesystem::path& path);

void write_index(std::ostream& out, const spider_index& index);
void write_index(std::ostream& out, const ni_spider_index& index);
spider_index read_spider_index(std::istream& in, const kernels::kernel_set& ks = kernels::best());
ni_spider_index read_ni_spider_index(std::istream& in, const kernels::kernel_set& ks = kernels::best());

template <class Index>
void save_index(const Index& index, const std::filesystem::path& path);
spider_index load_spider_index(const std::filesystem::path& path);
ni_spider_index load_ni_spider_index(const std::filesystem::path& path);

}  // namespace spider
