#pragma once

// Synthetic text corpora for the character-class presets. Letter
// frequencies are rough approximations of real protein sequences and English
// prose; the tests only need realistic densities and clustering, not real data.

#include <array>
#include <cctype>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace spider::testing {

inline std::string protein_corpus(std::size_t bytes, uint64_t seed) {
  // Amino acid one-letter codes with approximate background frequencies (%).
  static constexpr std::string_view letters = "ARNDCQEGHILKMFPSTWYV";
  static constexpr std::array<double, 20> weights{8.3, 5.5, 4.1, 5.5, 1.4, 3.9, 6.7, 7.1, 2.3, 5.9,
                                                  9.7, 5.8, 2.4, 3.9, 4.7, 6.6, 5.3, 1.1, 2.9, 6.9};
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<int> line_length(60, 400);
  std::string text;
  text.reserve(bytes);
  while (text.size() < bytes) {
    text += ">sp|P";
    text += std::to_string(rng() % 100000);
    text += '\n';
    for (int k = line_length(rng); k > 0 && text.size() < bytes; --k) text += letters[pick(rng)];
    text += '\n';
  }
  text.resize(bytes);
  return text;
}

inline std::string english_corpus(std::size_t bytes, uint64_t seed) {
  static constexpr std::array<std::string_view, 40> words{
      "the",     "of",      "and",    "in",       "to",      "was",    "is",       "for",
      "as",      "on",      "with",   "by",       "he",      "that",   "at",       "from",
      "his",     "it",      "an",     "were",     "are",     "which",  "this",     "also",
      "be",      "has",     "or",     "had",      "first",   "one",    "their",    "its",
      "new",     "after",   "who",    "they",     "two",     "her",    "Wikipedia", "Zealand"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> sentence(5, 25);
  std::string text;
  text.reserve(bytes + 32);
  while (text.size() < bytes) {
    const int length = sentence(rng);
    for (int k = 0; k < length; ++k) {
      std::string word(words[pick(rng)]);
      if (k == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      text += word;
      text += k + 1 == length ? ". " : " ";
    }
    if (rng() % 8 == 0) text += "\n\n";
  }
  text.resize(bytes);
  return text;
}

}  // namespace spider::testing
