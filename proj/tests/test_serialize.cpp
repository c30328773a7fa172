#include <random>
#include <sstream>

#include "doctest.h"
#include "spider/datagen.hpp"
#include "spider/serialize.hpp"

using namespace spider;

namespace {

template <class Index>
std::string bytes_of(const Index& index) {
  std::ostringstream out(std::ios::binary);
  write_index(out, index);
  return out.str();
}

template <class Index, class Reader>
void check_equivalent(const Index& a, const Reader& read, const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  const Index b = read(in);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.ones() == b.ones());
  bool ok = true;
  for (uint64_t i = 0; i < a.size(); i += 7) ok = ok && a.rank(i) == b.rank(i);
  for (uint64_t j = 1; j <= a.ones(); j += 5) ok = ok && a.select(j) == b.select(j);
  CHECK(ok);
}

const auto read_spider = [](std::istream& in) { return read_spider_index(in); };
const auto read_ni = [](std::istream& in) { return read_ni_spider_index(in); };

}  // namespace

TEST_CASE("bit vector round trip") {
  for (uint64_t n : {1, 63, 64, 65, 1000}) {
    const auto bv = datagen::gen_random(n, 0.4, n);
    std::stringstream s(std::ios::in | std::ios::out | std::ios::binary);
    write_bit_vector(s, bv);
    CHECK(read_bit_vector(s) == bv);
  }
}

TEST_CASE("index round trips") {
  for (double d : {0.0, 0.01, 0.5, 1.0}) {
    const auto bv = datagen::gen_random(150'000, d, 3);
    const spider_index s(bv);
    check_equivalent(s, read_spider, bytes_of(s));
    const ni_spider_index ni(bv);
    check_equivalent(ni, read_ni, bytes_of(ni));
  }
}

TEST_CASE("bad magic and version") {
  const spider_index s(datagen::gen_random(10'000, 0.5, 1));
  auto bytes = bytes_of(s);
  auto bad = bytes;
  bad[0] = 'X';
  std::istringstream in1(bad, std::ios::binary);
  CHECK_THROWS_AS(read_spider_index(in1), format_error);
  bad = bytes;
  bad[4] = 9;
  std::istringstream in2(bad, std::ios::binary);
  CHECK_THROWS_AS(read_spider_index(in2), format_error);
  // An SPIX stream is not an NIIX stream.
  std::istringstream in3(bytes, std::ios::binary);
  CHECK_THROWS_AS(read_ni_spider_index(in3), format_error);
}

TEST_CASE("every truncation is rejected") {
  const auto bv = datagen::gen_random(5'000, 0.5, 2);
  const auto spix = bytes_of(spider_index(bv));
  const auto niix = bytes_of(ni_spider_index(bv));
  for (std::size_t cut = 0; cut < spix.size(); cut += 1 + cut / 16) {
    std::istringstream in(spix.substr(0, cut), std::ios::binary);
    CHECK_THROWS_AS(read_spider_index(in), format_error);
  }
  for (std::size_t cut = 0; cut < niix.size(); cut += 1 + cut / 16) {
    std::istringstream in(niix.substr(0, cut), std::ios::binary);
    CHECK_THROWS_AS(read_ni_spider_index(in), format_error);
  }
  std::stringstream s(std::ios::in | std::ios::out | std::ios::binary);
  write_bit_vector(s, bv);
  const auto spbv = s.str();
  std::istringstream in(spbv.substr(0, spbv.size() - 1), std::ios::binary);
  CHECK_THROWS_AS(read_bit_vector(in), format_error);
}

TEST_CASE("bits past the logical length are rejected") {
  std::stringstream s(std::ios::in | std::ios::out | std::ios::binary);
  write_bit_vector(s, bit_vector::from_string("101"));
  auto bytes = s.str();
  bytes.back() = static_cast<char>(0x80);
  std::istringstream in(bytes, std::ios::binary);
  CHECK_THROWS_AS(read_bit_vector(in), format_error);
}

TEST_CASE("huge declared counts do not allocate") {
  const auto spix = bytes_of(spider_index(datagen::gen_random(1000, 0.5, 2)));
  auto bad = spix;
  // n sits right after magic and version; claim 2^60 bits.
  for (int k = 0; k < 8; ++k) bad[8 + k] = k == 7 ? 0x10 : 0;
  std::istringstream in(bad, std::ios::binary);
  CHECK_THROWS_AS(read_spider_index(in), format_error);
}

TEST_CASE("files on disk") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bv = datagen::gen_random(70'000, 0.2, 4);
  save_bit_vector(bv, dir / "spider_test.spbv");
  CHECK(load_bit_vector(dir / "spider_test.spbv") == bv);
  const spider_index s(bv);
  save_index(s, dir / "spider_test.spix");
  CHECK(load_spider_index(dir / "spider_test.spix").select(100) == s.select(100));
  const ni_spider_index ni(bv);
  save_index(ni, dir / "spider_test.niix");
  CHECK(load_ni_spider_index(dir / "spider_test.niix").select(100) == ni.select(100));
  std::filesystem::remove(dir / "spider_test.spbv");
  std::filesystem::remove(dir / "spider_test.spix");
  std::filesystem::remove(dir / "spider_test.niix");
  CHECK_THROWS(load_bit_vector(dir / "spider_test.spbv"));
}

TEST_CASE("corrupted bytes either fail to load or load into a queryable index") {
  std::mt19937_64 rng(99);
  const auto bv = datagen::gen_random(140'000, 0.3, 6);
  const auto spix = bytes_of(spider_index(bv));
  const auto niix = bytes_of(ni_spider_index(bv));
  int loaded = 0, rejected = 0;
  auto exercise = [&](const auto& index) {
    for (uint64_t i = 0; i < index.size(); i += 997) (void)index.rank(i);
    for (uint64_t j = 1; j <= index.ones(); j += 499) {
      try {
        (void)index.select(j);
      } catch (const std::logic_error&) {
        // A scan that cannot find the rank in its block reports it.
      }
    }
  };
  for (int t = 0; t < 300; ++t) {
    auto a = spix, b = niix;
    for (int flips = 0; flips < 3; ++flips) {
      a[rng() % a.size()] ^= static_cast<char>(1 + rng() % 255);
      b[rng() % b.size()] ^= static_cast<char>(1 + rng() % 255);
    }
    try {
      std::istringstream in(a, std::ios::binary);
      exercise(read_spider_index(in));
      ++loaded;
    } catch (const format_error&) {
      ++rejected;
    }
    try {
      std::istringstream in(b, std::ios::binary);
      exercise(read_ni_spider_index(in));
      ++loaded;
    } catch (const format_error&) {
      ++rejected;
    }
  }
  CHECK(loaded + rejected == 600);
  MESSAGE(loaded << " loaded, " << rejected << " rejected");
}
