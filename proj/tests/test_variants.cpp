#include "doctest.h"
#include "spider/datagen.hpp"
#include "spider/oracle.hpp"
#include "spider/variants.hpp"

using namespace spider;

TEST_CASE("names round-trip") {
  for (auto kind : all_structures()) CHECK(parse_structure(name(kind)) == kind);
  CHECK(name(structure_kind::spider_1l_select) == "spider-1L-select");
  CHECK_THROWS_AS(parse_structure("rank9"), std::invalid_argument);
  CHECK(predicting_structures().size() == 4);
}

TEST_CASE("config grid maps onto the four structures") {
  CHECK(kind_of({rank_layout_kind::interleaved, select_levels::two}) == structure_kind::spider);
  CHECK(kind_of({rank_layout_kind::flat, select_levels::one}) == structure_kind::ni_spider);
  CHECK(kind_of({rank_layout_kind::interleaved, select_levels::one}) == structure_kind::spider_1l_select);
  CHECK(kind_of({rank_layout_kind::flat, select_levels::two}) == structure_kind::ni_spider_2l_select);
}

TEST_CASE("every structure agrees with the oracle") {
  const auto bv = datagen::gen_random(1'000'000, 0.5, 12);
  const oracle::table t(bv);
  for (auto kind : all_structures()) {
    CAPTURE(name(kind));
    const any_index idx = build_structure(kind, bv);
    CHECK(idx.kind() == kind);
    CHECK(idx.size() == bv.size());
    CHECK(idx.ones() == bv.ones());
    bool ok = true;
    for (uint64_t i = 0; i < bv.size(); ++i) ok = ok && idx.rank(i) == t.rank(i);
    for (uint64_t j = 1; j <= bv.ones(); ++j) ok = ok && idx.select(j) == t.select(j);
    CHECK(ok);
  }
}

TEST_CASE("variant configs are query-equivalent to the named structures") {
  const auto bv = datagen::gen_random(200'000, 0.2, 13);
  const any_index a = build_variant(bv, {rank_layout_kind::interleaved, select_levels::two});
  const any_index b = build_structure(structure_kind::spider, bv);
  const any_index c = build_variant(bv, {rank_layout_kind::flat, select_levels::one});
  const any_index d = build_structure(structure_kind::ni_spider, bv);
  for (uint64_t j = 1; j <= bv.ones(); ++j) {
    REQUIRE(a.select_instrumented(j).wrong_blocks == b.select_instrumented(j).wrong_blocks);
    REQUIRE(c.select_instrumented(j).wrong_blocks == d.select_instrumented(j).wrong_blocks);
  }
}

TEST_CASE("strawman identities and errors") {
  const bit_vector ones(10'000, true);
  const strawman_index idx(ones);
  CHECK(idx.rank(511) == 512);
  CHECK(idx.select(513) == 512);
  CHECK(idx.select_array().size() == (10'000 - 1) / 8192 + 1);
  CHECK_THROWS_AS(idx.select(0), std::out_of_range);
  CHECK_THROWS_AS(strawman_index(bit_vector(1000, false)).select(1), empty_select_error);
}

TEST_CASE("random 10% vector on the strawman") {
  const auto bv = datagen::gen_random(300'000, 0.1, 14);
  const strawman_index idx(bv);
  const oracle::table t(bv);
  bool ok = true;
  for (uint64_t i = 0; i < bv.size(); ++i) ok = ok && idx.rank(i) == t.rank(i);
  for (uint64_t j = 1; j <= bv.ones(); ++j) ok = ok && idx.select(j) == t.select(j);
  CHECK(ok);
}
