#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qds {

using Bit = std::uint8_t;

/// One bit per element, values 0 or 1.
using BitString = std::vector<Bit>;

class Rng;

BitString random_bits(Rng& rng, std::size_t n);

BitString xor_bits(std::span<const Bit> a, std::span<const Bit> b);

std::size_t hamming_distance(std::span<const Bit> a, std::span<const Bit> b);

/// Packs bits MSB-first into bytes; the final byte is zero-padded.
std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits);

BitString unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

inline std::string bits_to_hex(std::span<const Bit> bits) { return to_hex(pack_bits(bits)); }
inline BitString bits_from_hex(std::string_view hex, std::size_t nbits) {
  return unpack_bits(from_hex(hex), nbits);
}

std::string bits_to_string(std::span<const Bit> bits);
BitString bits_from_string(std::string_view s);

}  // namespace qds
