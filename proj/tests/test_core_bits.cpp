#include <stdexcept>

#include "doctest.h"
#include "spider/bit_vector.hpp"

using spider::bit_vector;

TEST_CASE("bits are stored least significant first") {
  const auto bv = bit_vector::from_string("1011");
  CHECK(bv.size() == 4);
  CHECK(bv.ones() == 3);
  CHECK(bv.words().size() == 1);
  CHECK(bv.words()[0] == 0b1101);
  CHECK(bv.get(0));
  CHECK_FALSE(bv.get(1));
  CHECK(bv[3]);
}

TEST_CASE("get past the end throws") {
  const auto bv = bit_vector::from_string("1011");
  CHECK_THROWS_AS(bv.get(4), std::out_of_range);
}

TEST_CASE("fill constructor keeps the tail clear") {
  const bit_vector bv(70, true);
  CHECK(bv.ones() == 70);
  CHECK(bv.words()[1] == 0x3F);
  const bit_vector zeros(130, false);
  CHECK(zeros.ones() == 0);
  CHECK(zeros.words().size() == 3);
}

TEST_CASE("word constructor validates shape") {
  CHECK_THROWS_AS(bit_vector(65, std::vector<uint64_t>{1}), std::invalid_argument);
  CHECK_THROWS_AS(bit_vector(4, std::vector<uint64_t>{0x10}), std::invalid_argument);
  const bit_vector ok(64, std::vector<uint64_t>{~uint64_t{0}});
  CHECK(ok.ones() == 64);
}

TEST_CASE("from_string rejects other characters") {
  CHECK_THROWS_AS(bit_vector::from_string("10x1"), std::invalid_argument);
}

TEST_CASE("extract_word reads across word boundaries and zero-fills") {
  const std::vector<uint64_t> words{0xFFFF'0000'0000'0000ULL, 0x1234};
  CHECK(spider::extract_word(words, 0) == words[0]);
  CHECK(spider::extract_word(words, 48) == (0xFFFFULL | (0x1234ULL << 16)));
  CHECK(spider::extract_word(words, 64) == 0x1234);
  CHECK(spider::extract_word(words, 100) == 0);
  CHECK(spider::extract_word(words, 1000) == 0);
}

TEST_CASE("equality compares length and content") {
  CHECK(bit_vector::from_string("101") == bit_vector::from_string("101"));
  CHECK_FALSE(bit_vector::from_string("101") == bit_vector::from_string("1010"));
}
