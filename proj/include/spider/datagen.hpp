#pragma once

// Reproducible bit vectors: independent random bits, evenly spaced ones, and
// vectors derived from text through a byte -> bit character-class map.
//
// Random bits come from std::mt19937_64, whose output sequence is fixed by
// the C++ standard, so a (n, density, seed) triple yields the same vector on
// every conforming platform.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "spider/bit_vector.hpp"

namespace spider::datagen {

/// Each bit is 1 with probability `density` (one 64-bit draw per bit,
/// compared against a fixed threshold). Throws std::invalid_argument unless
/// n >= 1 and 0 <= density <= 1.
bit_vector gen_random(uint64_t n, double density, uint64_t seed);

/// Ones at positions spacing-1, 2*spacing-1, ... (every spacing-th bit).
bit_vector gen_every_kth(uint64_t n, uint64_t spacing);

using char_class_map = std::array<uint8_t, 256>;

/// Presets: "wikipedia" (a-n, A-N -> 1), "protein" (L -> 1),
/// "protein-even" (A-L -> 0, everything else -> 1). Throws on unknown names.
char_class_map preset_map(std::string_view name);
const std::vector<std::string_view>& preset_names();

/// Bit i = map[bytes[i]]. Throws std::invalid_argument for empty input.
bit_vector text_to_bits(std::span<const uint8_t> bytes, const char_class_map& map);
bit_vector text_to_bits(std::string_view text, const char_class_map& map);

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path);

}  // namespace spider::datagen
