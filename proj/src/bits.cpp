#include "qds/bits.hpp"

#include <stdexcept>

#include "qds/rng.hpp"

namespace qds {

BitString random_bits(Rng& rng, std::size_t n) {
  BitString out(n);
  for (auto& b : out) b = rng.coin() ? 1 : 0;
  return out;
}

BitString xor_bits(std::span<const Bit> a, std::span<const Bit> b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
  BitString out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Bit>((a[i] ^ b[i]) & 1u);
  return out;
}

std::size_t hamming_distance(std::span<const Bit> a, std::span<const Bit> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

BitString unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (nbits > bytes.size() * 8) throw std::invalid_argument("unpack_bits: not enough bytes");
  BitString out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

namespace {
int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("from_hex: invalid digit");
}
}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2) throw std::invalid_argument("from_hex: odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(hex_digit(hex[2 * i]) << 4 | hex_digit(hex[2 * i + 1]));
  return out;
}

std::string bits_to_string(std::span<const Bit> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

BitString bits_from_string(std::string_view s) {
  BitString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bits_from_string: not a bit");
    out[i] = s[i] == '1';
  }
  return out;
}

}  // namespace qds
