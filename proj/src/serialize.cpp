#include "spider/serialize.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "spider/errors.hpp"

namespace spider {

namespace {

using magic_t = std::array<char, 4>;
constexpr magic_t bit_vector_magic{'S', 'P', 'B', 'V'};
constexpr magic_t spider_magic{'S', 'P', 'I', 'X'};
constexpr magic_t ni_spider_magic{'N', 'I', 'I', 'X'};

template <class T>
T byteswap(T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

template <class T>
T to_little(T value) {
  if constexpr (std::endian::native == std::endian::big) return byteswap(value);
  return value;
}

class writer {
 public:
  explicit writer(std::ostream& out) : out_(out) {}

  void magic(const magic_t& m) { out_.write(m.data(), m.size()); }

  template <class T>
  void scalar(T value) {
    value = to_little(value);
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  template <class T>
  void array(std::span<const T> values) {
    scalar<uint64_t>(values.size());
    if constexpr (std::endian::native == std::endian::little) {
      out_.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
    } else {
      for (T v : values) scalar(v);
    }
  }

  void finish() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed");
  }

 private:
  std::ostream& out_;
};

class reader {
 public:
  explicit reader(std::istream& in) : in_(in) {
    // Bound allocations by what is actually left in a seekable stream.
    const auto here = in_.tellg();
    if (here != std::streampos(-1)) {
      in_.seekg(0, std::ios::end);
      const auto end = in_.tellg();
      in_.seekg(here);
      if (end != std::streampos(-1)) remaining_ = static_cast<uint64_t>(end - here);
    }
  }

  void expect_magic(const magic_t& expected) {
    magic_t got{};
    bytes(got.data(), got.size());
    if (got != expected) {
      throw format_error("bad magic: expected " + std::string(expected.data(), 4) + ", got " +
                         std::string(got.data(), 4));
    }
    const auto version = scalar<uint32_t>();
    if (version != format_version) throw format_error("unsupported format version " + std::to_string(version));
  }

  template <class T>
  T scalar() {
    T value{};
    bytes(reinterpret_cast<char*>(&value), sizeof(T));
    return to_little(value);
  }

  /// Reads a u64 count followed by that many elements. `expected` rejects
  /// any other count before allocating.
  template <class T, class Alloc = std::allocator<T>>
  std::vector<T, Alloc> array(uint64_t expected, const char* what) {
    const auto count = scalar<uint64_t>();
    if (count != expected) {
      throw format_error(std::string(what) + ": expected " + std::to_string(expected) + " entries, found " +
                         std::to_string(count));
    }
    words_fit(count, sizeof(T), what);
    std::vector<T, Alloc> values(count);
    bytes(reinterpret_cast<char*>(values.data()), count * sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      for (T& v : values) v = byteswap(v);
    }
    return values;
  }

  void words_fit(uint64_t count, uint64_t element_bytes, const char* what) const {
    if (count > std::numeric_limits<uint64_t>::max() / element_bytes || count * element_bytes > remaining_) {
      throw format_error(std::string(what) + ": truncated");
    }
  }

 private:
  void bytes(char* dst, uint64_t count) {
    if (count > remaining_) throw format_error("truncated input");
    in_.read(dst, static_cast<std::streamsize>(count));
    if (static_cast<uint64_t>(in_.gcount()) != count) throw format_error("truncated input");
    remaining_ -= count;
  }

  std::istream& in_;
  uint64_t remaining_ = std::numeric_limits<uint64_t>::max();
};

uint64_t superblocks_for(uint64_t n, uint64_t superblock_bits) { return (n + superblock_bits - 1) / superblock_bits; }

// Structural checks that keep queries on a loaded index in bounds. Count
// values inside a superblock are not re-derived here; verify() does that.
void check_directory(std::span<const uint64_t> superblock_counts, const char* what) {
  if (superblock_counts.front() != 0 || !std::is_sorted(superblock_counts.begin(), superblock_counts.end())) {
    throw format_error(std::string(what) + ": superblock counts must start at 0 and never decrease");
  }
}

template <class Fn>
auto open_and_read(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return fn(in);
}

template <class Fn>
void open_and_write(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create " + path.string());
  fn(out);
}

}  // namespace

void write_bit_vector(std::ostream& out, const bit_vector& bv) {
  writer w(out);
  w.magic(bit_vector_magic);
  w.scalar(format_version);
  w.scalar<uint64_t>(bv.size());
  const auto words = bv.words();
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size_bytes()));
  } else {
    for (uint64_t word : words) w.scalar(word);
  }
  w.finish();
}

bit_vector read_bit_vector(std::istream& in) {
  reader r(in);
  r.expect_magic(bit_vector_magic);
  const auto n = r.scalar<uint64_t>();
  const uint64_t count = words_for_bits(n);
  r.words_fit(count, 8, "bit vector words");
  std::vector<uint64_t> words(count);
  for (uint64_t& word : words) word = r.scalar<uint64_t>();
  try {
    return bit_vector(n, std::move(words));
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
}

void save_bit_vector(const bit_vector& bv, const std::filesystem::path& path) {
  open_and_write(path, [&](std::ostream& out) { write_bit_vector(out, bv); });
}

bit_vector load_bit_vector(const std::filesystem::path& path) {
  return open_and_read(path, [](std::istream& in) { return read_bit_vector(in); });
}

void write_index(std::ostream& out, const spider_index& index) {
  const auto& layout = index.layout();
  const auto& sampler = index.sampler();
  writer w(out);
  w.magic(spider_magic);
  w.scalar(format_version);
  w.scalar<uint64_t>(index.size());
  w.scalar<uint64_t>(index.ones());
  w.scalar<uint64_t>(sampler.sigma_high());
  w.scalar<uint64_t>(sampler.sigma_low());
  w.array(layout.rank_array());
  w.array(layout.modified_words());
  w.array(sampler.high());
  w.array(sampler.low());
  w.finish();
}

void write_index(std::ostream& out, const ni_spider_index& index) {
  const auto& layout = index.layout();
  const auto& sampler = index.sampler();
  writer w(out);
  w.magic(ni_spider_magic);
  w.scalar(format_version);
  w.scalar<uint64_t>(index.size());
  w.scalar<uint64_t>(index.ones());
  w.scalar<uint64_t>(sampler.sigma());
  w.array(layout.l1_rank());
  w.array(layout.l2_rank());
  w.array(sampler.samples());
  w.array(layout.words());
  w.finish();
}

spider_index read_spider_index(std::istream& in, const kernels::kernel_set& ks) {
  reader r(in);
  r.expect_magic(spider_magic);
  const auto n = r.scalar<uint64_t>();
  const auto n1 = r.scalar<uint64_t>();
  const auto sigma_high = r.scalar<uint64_t>();
  const auto sigma_low = r.scalar<uint64_t>();
  if (n == 0 || n1 > n) throw format_error("SPIX: inconsistent bit counts");
  if (!std::has_single_bit(sigma_high) || !std::has_single_bit(sigma_low)) {
    throw format_error("SPIX: sampling thresholds must be powers of two");
  }
  const uint64_t superblocks = superblocks_for(n, interleaved_rank::superblock_bits);
  auto rank_array = r.array<uint64_t>(superblocks + 1, "rank_array");
  auto modified = r.array<uint64_t, aligned_allocator<uint64_t>>(
      superblocks * interleaved_rank::blocks_per_superblock * block_words, "modified bit vector");
  auto high = r.array<uint64_t>(n1 == 0 ? 0 : (n1 - 1) / sigma_high + 2, "high_select");
  auto low = r.array<uint16_t>(n1 == 0 ? 0 : n1 / sigma_low + 2, "low_select");
  if (rank_array.back() != n1) throw format_error("SPIX: rank sentinel does not match n1");
  check_directory(rank_array, "SPIX");
  for (uint64_t b = 0; b < modified.size(); b += interleaved_rank::blocks_per_superblock * block_words) {
    if (static_cast<uint16_t>(modified[b]) != 0) throw format_error("SPIX: superblock must start with local rank 0");
  }
  try {
    auto layout = interleaved_rank::from_parts(n, std::move(rank_array), std::move(modified), ks);
    auto sampler = two_level_select<interleaved_rank>::from_parts(layout, sigma_high, sigma_low, std::move(high),
                                                                  std::move(low));
    return spider_index(std::move(layout), std::move(sampler));
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
}

ni_spider_index read_ni_spider_index(std::istream& in, const kernels::kernel_set& ks) {
  reader r(in);
  r.expect_magic(ni_spider_magic);
  const auto n = r.scalar<uint64_t>();
  const auto n1 = r.scalar<uint64_t>();
  const auto sigma = r.scalar<uint64_t>();
  if (n == 0 || n1 > n) throw format_error("NIIX: inconsistent bit counts");
  if (!std::has_single_bit(sigma)) throw format_error("NIIX: sampling threshold must be a power of two");
  const uint64_t superblocks = superblocks_for(n, flat_rank::superblock_bits);
  const uint64_t blocks = superblocks * flat_rank::blocks_per_superblock;
  auto l1 = r.array<uint64_t>(superblocks + 1, "l1_rank");
  auto l2 = r.array<uint16_t>(blocks, "l2_rank");
  auto samples = r.array<uint64_t>(n1 == 0 ? 0 : n1 / sigma + 2, "select_array");
  auto words = r.array<uint64_t, aligned_allocator<uint64_t>>(blocks * block_words, "bit vector");
  if (l1.back() != n1) throw format_error("NIIX: rank sentinel does not match n1");
  check_directory(l1, "NIIX");
  for (uint64_t b = 0; b < l2.size(); b += flat_rank::blocks_per_superblock) {
    if (l2[b] != 0) throw format_error("NIIX: superblock must start with local rank 0");
  }
  if ((n & 63) != 0 && (words[n >> 6] >> (n & 63)) != 0) throw format_error("NIIX: bits past n are set");
  for (uint64_t w = words_for_bits(n); w < words.size(); ++w) {
    if (words[w] != 0) throw format_error("NIIX: bits past n are set");
  }
  try {
    auto layout = flat_rank::from_parts(n, std::move(l1), std::move(l2), std::move(words), ks);
    auto sampler = one_level_select<flat_rank>::from_parts(layout, sigma, std::move(samples));
    return ni_spider_index(std::move(layout), std::move(sampler));
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
}

template <class Index>
void save_index(const Index& index, const std::filesystem::path& path) {
  open_and_write(path, [&](std::ostream& out) { write_index(out, index); });
}

template void save_index<spider_index>(const spider_index&, const std::filesystem::path&);
template void save_index<ni_spider_index>(const ni_spider_index&, const std::filesystem::path&);

spider_index load_spider_index(const std::filesystem::path& path) {
  return open_and_read(path, [](std::istream& in) { return read_spider_index(in); });
}

ni_spider_index load_ni_spider_index(const std::filesystem::path& path) {
  return open_and_read(path, [](std::istream& in) { return read_ni_spider_index(in); });
}

}  // namespace spider
