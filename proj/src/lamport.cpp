#include "qds/lamport.hpp"

#include <openssl/sha.h>

#include <array>

#include "qds/errors.hpp"
#include "qds/rng.hpp"

namespace qds {

namespace {

BitString sha256_stretch(const BitString& x, std::size_t nbits) {
  const auto packed = pack_bits(x);
  BitString out;
  out.reserve(nbits);
  for (std::uint32_t counter = 0; out.size() < nbits; ++counter) {
    std::vector<std::uint8_t> buf(4 + packed.size());
    buf[0] = static_cast<std::uint8_t>(counter >> 24);
    buf[1] = static_cast<std::uint8_t>(counter >> 16);
    buf[2] = static_cast<std::uint8_t>(counter >> 8);
    buf[3] = static_cast<std::uint8_t>(counter);
    std::copy(packed.begin(), packed.end(), buf.begin() + 4);
    std::array<std::uint8_t, SHA256_DIGEST_LENGTH> digest{};
    SHA256(buf.data(), buf.size(), digest.data());
    const auto block = unpack_bits(digest, 8 * SHA256_DIGEST_LENGTH);
    for (std::size_t i = 0; i < block.size() && out.size() < nbits; ++i) out.push_back(block[i]);
  }
  return out;
}

}  // namespace

BitString OwfSpec::operator()(const BitString& x) const {
  if (x.size() != bits) throw InvalidParameter("OWF input length does not match n");
  if (name == "sha256") return sha256_stretch(x, bits);
  if (name == "toy-parity") {
    Bit parity = 0;
    for (Bit b : x) parity ^= b;
    return BitString(bits, parity);
  }
  throw InvalidParameter("unknown one-way function: " + name);
}

LamportKeyPair::LamportKeyPair(BitString x0, BitString x1, OwfSpec owf)
    : x0_(std::move(x0)), x1_(std::move(x1)) {
  if (x0_.size() != owf.bits || x1_.size() != owf.bits)
    throw InvalidParameter("Lamport secret length does not match n");
  vk_.p0 = owf(x0_);
  vk_.p1 = owf(x1_);
  vk_.owf = std::move(owf);
}

BitString LamportKeyPair::sign(Bit m) {
  if (used_) throw KeyAlreadyUsed();
  used_ = true;
  return secret(m);
}

nlohmann::json LamportKeyPair::to_json() const {
  return {{"n", vk_.owf.bits},          {"H", vk_.owf.name},       {"X0", bits_to_hex(x0_)},
          {"X1", bits_to_hex(x1_)},      {"P0", bits_to_hex(vk_.p0)}, {"P1", bits_to_hex(vk_.p1)}};
}

LamportKeyPair LamportKeyPair::from_json(const nlohmann::json& j) {
  const std::size_t n = j.at("n").get<std::size_t>();
  OwfSpec owf{j.at("H").get<std::string>(), n};
  LamportKeyPair kp(bits_from_hex(j.at("X0").get<std::string>(), n),
                    bits_from_hex(j.at("X1").get<std::string>(), n), owf);
  if (bits_to_hex(kp.vk_.p0) != j.at("P0").get<std::string>() ||
      bits_to_hex(kp.vk_.p1) != j.at("P1").get<std::string>())
    throw InvalidParameter("Lamport key file: public key does not match secrets");
  return kp;
}

LamportKeyPair lamport_gen(std::size_t n, Rng& rng, const std::string& owf) {
  if (n < 1) throw InvalidParameter("Lamport key length must be at least 1 bit");
  BitString x0 = random_bits(rng, n);
  BitString x1 = random_bits(rng, n);
  return LamportKeyPair(std::move(x0), std::move(x1), OwfSpec{owf, n});
}

Verdict lamport_ver(const LamportVerifyKey& vk, Bit m, const BitString& sigma) {
  if (sigma.size() != vk.owf.bits) return Verdict::Rej;
  return vk.owf(sigma) == vk.p(m) ? Verdict::Acc : Verdict::Rej;
}

Arbitration lamport_arbitrate(const LamportVerifyKey& vk, Bit m, const BitString& claimed) {
  return lamport_ver(vk, m, claimed) == Verdict::Acc ? Arbitration::AliceDishonest
                                                     : Arbitration::BobDishonest;
}

}  // namespace qds
