#include "spider/datagen.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

namespace spider::datagen {

bit_vector gen_random(uint64_t n, double density, uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_random: n must be at least 1");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("gen_random: density must lie in [0, 1]");
  if (density == 1.0) return bit_vector(n, true);

  // P(draw < threshold) = threshold / 2^64.
  const auto threshold = static_cast<uint64_t>(std::ldexp(density, 64));
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> words(words_for_bits(n), 0);
  for (uint64_t i = 0; i < n; ++i) {
    if (rng() < threshold) words[i >> 6] |= uint64_t{1} << (i & 63);
  }
  return bit_vector(n, std::move(words));
}

bit_vector gen_every_kth(uint64_t n, uint64_t spacing) {
  if (n == 0 || spacing == 0) throw std::invalid_argument("gen_every_kth: n and spacing must be positive");
  std::vector<uint64_t> words(words_for_bits(n), 0);
  for (uint64_t i = spacing - 1; i < n; i += spacing) words[i >> 6] |= uint64_t{1} << (i & 63);
  return bit_vector(n, std::move(words));
}

char_class_map preset_map(std::string_view name) {
  char_class_map map{};
  if (name == "wikipedia") {
    for (int c = 'a'; c <= 'n'; ++c) map[c] = 1;
    for (int c = 'A'; c <= 'N'; ++c) map[c] = 1;
  } else if (name == "protein") {
    map['L'] = 1;
  } else if (name == "protein-even") {
    map.fill(1);
    for (int c = 'A'; c <= 'L'; ++c) map[c] = 0;
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }
  return map;
}

const std::vector<std::string_view>& preset_names() {
  static const std::vector<std::string_view> names{"wikipedia", "protein", "protein-even"};
  return names;
}

bit_vector text_to_bits(std::span<const uint8_t> bytes, const char_class_map& map) {
  if (bytes.empty()) throw std::invalid_argument("text_to_bits: empty input");
  std::vector<uint64_t> words(words_for_bits(bytes.size()), 0);
  for (uint64_t i = 0; i < bytes.size(); ++i) {
    if (map[bytes[i]]) words[i >> 6] |= uint64_t{1} << (i & 63);
  }
  return bit_vector(bytes.size(), std::move(words));
}

bit_vector text_to_bits(std::string_view text, const char_class_map& map) {
  return text_to_bits(std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()), map);
}

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace spider::datagen
