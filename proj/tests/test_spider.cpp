#include <random>
#include <vector>

#include "doctest.h"
#include "spider/datagen.hpp"
#include "spider/oracle.hpp"
#include "spider/spider.hpp"

using namespace spider;

namespace {

bit_vector single_one(uint64_t n, uint64_t pos) {
  std::vector<uint64_t> words(words_for_bits(n), 0);
  words[pos >> 6] |= uint64_t{1} << (pos & 63);
  return bit_vector(n, std::move(words));
}

void check_all_queries(const spider_index& idx, const bit_vector& bv) {
  const oracle::table t(bv);
  bool ok = true;
  for (uint64_t i = 0; i < bv.size(); ++i) ok = ok && idx.rank(i) == t.rank(i);
  for (uint64_t j = 1; j <= bv.ones(); ++j) ok = ok && idx.select(j) == t.select(j);
  CHECK(ok);
}

}  // namespace

TEST_CASE("one dense superblock") {
  const bit_vector bv(63488, true);
  const spider_index idx(bv);
  const auto& layout = idx.layout();
  REQUIRE(layout.rank_array().size() == 2);
  CHECK(layout.rank_array()[0] == 0);
  CHECK(layout.rank_array()[1] == 63488);
  for (uint64_t b = 0; b < 128; ++b) CHECK(layout.local_rank(b) == 496 * b);
  CHECK(idx.rank(63487) == 63488);
}

TEST_CASE("all zeros") {
  const bit_vector bv(126976, false);
  const spider_index idx(bv);
  CHECK(idx.layout().rank_array().size() == 3);
  for (uint64_t r : idx.layout().rank_array()) CHECK(r == 0);
  for (uint64_t b = 0; b < idx.layout().block_count(); ++b) CHECK(idx.layout().local_rank(b) == 0);
  CHECK(idx.sampler().high().empty());
  CHECK(idx.sampler().low().empty());
  CHECK(idx.rank(100000) == 0);
  CHECK_THROWS_AS(idx.select(1), empty_select_error);
  const double overhead = idx.space().overhead_percent();
  CHECK(overhead > 3.3);
  CHECK(overhead < 3.4);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(spider_index(bit_vector(0, false)), std::invalid_argument);
}

TEST_CASE("out-of-range queries") {
  const auto bv = datagen::gen_random(5000, 0.3, 2);
  const spider_index idx(bv);
  CHECK_THROWS_AS(idx.rank(5000), std::out_of_range);
  CHECK_THROWS_AS(idx.select(0), std::out_of_range);
  CHECK_THROWS_AS(idx.select(bv.ones() + 1), std::out_of_range);
}

TEST_CASE("dense vector over four superblocks") {
  const bit_vector bv(253952, true);
  const spider_index idx(bv);
  CHECK(idx.sampler().find_superblock(idx.layout(), 63489, 1) == 1);
  CHECK(idx.sampler().find_superblock(idx.layout(), 1, 0) == 0);
  CHECK(idx.select(70000) == 69999);
  for (uint64_t j = 1; j <= bv.ones(); j += 997) CHECK(idx.select_instrumented(j).wrong_blocks == 0);
}

TEST_CASE("find_superblock walks right when every one is in the last superblock") {
  const uint64_t n = 4 * 63488;
  std::vector<uint64_t> words(words_for_bits(n), 0);
  for (uint64_t p = 3 * 63488 + 5; p < n; p += 7) words[p >> 6] |= uint64_t{1} << (p & 63);
  const bit_vector bv(n, std::move(words));
  const spider_index idx(bv);
  CHECK(idx.sampler().find_superblock(idx.layout(), 1, 0) == 3);
  CHECK(idx.select(1) == 3 * 63488 + 5);
  check_all_queries(idx, bv);
}

TEST_CASE("single one bits") {
  const spider_index far(single_one(253952, 200000));
  CHECK(far.select(1) == 200000);
  CHECK(far.rank(199999) == 0);
  CHECK(far.rank(200000) == 1);
  const spider_index first(single_one(1000, 0));
  CHECK(first.select(1) == 0);
  const spider_index last(single_one(63489, 63488));
  CHECK(last.select(1) == 63488);
}

TEST_CASE("interpolation") {
  // Offsets 100 and 2148 in superblock 0, sigma_low 2048, j = 1024.
  CHECK(interpolate_two_level(63488, 0, 100, 2148, 2048, 11, 0, 1024, 0) == 1124);
  // j on a sample point: no interpolation term.
  CHECK(interpolate_two_level(63488, 2, 700, 900, 2048, 11, 4096, 4096, 4000) == 2 * 63488 + 700);
  // b < a, superblock already past the lower sample: a is rebased.
  CHECK(interpolate_two_level(63488, 1, 63000, 200, 2048, 11, 2048, 2048 + 1024, 2100) == 63344);
  // b < a, lower sample inside superblock s: b is rebased.
  CHECK(interpolate_two_level(63488, 1, 63000, 200, 2048, 11, 2048, 2048 + 1024, 2000) ==
        63488 + 63000 + (200 + 63488 - 63000) / 2);
  // Negative step truncates toward zero.
  CHECK(divide_toward_zero(-3, 2, 1) == -1);
  CHECK(divide_toward_zero(-3, 3, 0) == -1);
  CHECK(divide_toward_zero(7, 4, 2) == 1);
}

TEST_CASE("sample rates") {
  const auto bv = datagen::gen_random(253952, 0.5, 9);
  const spider_index idx(bv);
  CHECK(idx.sampler().sigma_high() == 32768);
  CHECK(idx.sampler().sigma_low() == 2048);
  CHECK(pow2_at_least(0, 5) == 1);
  CHECK(pow2_at_least(17, 1) == 32);
}

TEST_CASE("construction invariants on random vectors") {
  for (double density : {0.001, 0.1, 0.5, 0.97}) {
    CAPTURE(density);
    const auto bv = datagen::gen_random(63488 * 6 + 1234, density, 17);
    const spider_index idx(bv);
    const auto& layout = idx.layout();
    const oracle::table t(bv);
    const uint64_t n1 = bv.ones();

    // Local ranks and superblock counts against the oracle.
    bool ok = true;
    for (uint64_t b = 0; b < layout.block_count(); ++b) {
      const uint64_t start = b * 496;
      const uint64_t sb_start = (b / 128) * 63488;
      const uint64_t before = start == 0 ? 0 : (start - 1 < bv.size() ? t.rank(start - 1) : n1);
      const uint64_t sb_before = sb_start == 0 ? 0 : (sb_start - 1 < bv.size() ? t.rank(sb_start - 1) : n1);
      ok = ok && layout.local_rank(b) == before - sb_before;
      ok = ok && layout.local_rank(b) <= 62992;
    }
    CHECK(ok);
    CHECK(layout.rank_array().back() == n1);

    // Sample rates are the smallest powers of two meeting their targets.
    const uint64_t sh = idx.sampler().sigma_high(), sl = idx.sampler().sigma_low();
    CHECK(sh * bv.size() >= 63488 * n1);
    CHECK((sh == 1 || (sh / 2) * bv.size() < 63488 * n1));
    CHECK(sl * bv.size() * 100 >= 405504 * n1);
    CHECK((sl == 1 || (sl / 2) * bv.size() * 100 < 405504 * n1));

    // High entries: nearest superblock of select(i*sh + 1).
    const auto high = idx.sampler().high();
    REQUIRE(high.size() == (n1 - 1) / sh + 2);
    for (uint64_t i = 0; i + 1 < high.size(); ++i) {
      CHECK(high[i] == (t.select(i * sh + 1) + 31744) / 63488);
    }
    CHECK(high.back() == layout.superblock_count() - 1);

    // Low entries: superblock offsets of select(i*sl), last is select(n1).
    const auto low = idx.sampler().low();
    REQUIRE(low.size() == n1 / sl + 2);
    CHECK(low[0] == 0);
    for (uint64_t i = 1; i + 1 < low.size(); ++i) CHECK(low[i] == t.select(i * sl) % 63488);
    CHECK(low.back() == t.select(n1) % 63488);

    check_all_queries(idx, bv);
  }
}

TEST_CASE("random 10% vector, every select") {
  const auto bv = datagen::gen_random(1'000'000, 0.1, 5);
  check_all_queries(spider_index(bv), bv);
}

TEST_CASE("space at 50% density") {
  const auto bv = datagen::gen_random(63488 * 200, 0.5, 1);
  const double overhead = spider_index(bv).space().overhead_percent();
  CHECK(overhead >= 3.3);
  CHECK(overhead <= 3.83);
}

TEST_CASE("all kernel sets give identical answers") {
  const auto bv = datagen::gen_random(300'000, 0.3, 21);
  const spider_index reference(bv, kernels::portable());
  for (const auto* ks : kernels::available()) {
    CAPTURE(ks->name);
    const spider_index idx(bv, *ks);
    bool ok = true;
    for (uint64_t i = 0; i < bv.size(); i += 3) ok = ok && idx.rank(i) == reference.rank(i);
    for (uint64_t j = 1; j <= bv.ones(); j += 2) {
      const auto a = idx.select_instrumented(j), b = reference.select_instrumented(j);
      ok = ok && a.position == b.position && a.wrong_blocks == b.wrong_blocks;
    }
    CHECK(ok);
  }
}
