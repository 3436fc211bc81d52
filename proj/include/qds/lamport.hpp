#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "qds/bits.hpp"

namespace qds {

class Rng;

enum class Verdict : std::uint8_t { Acc, Rej };
enum class Arbitration : std::uint8_t { AliceDishonest, BobDishonest };

/// One-way function H: {0,1}^n -> {0,1}^n.
///
/// "sha256" chains SHA-256 over (counter || input) and truncates to n bits.
/// "toy-parity" maps every input to n copies of its parity; it exists only to
/// show how a broken H lets Bob forge.
struct OwfSpec {
  std::string name = "sha256";
  std::size_t bits = 128;

  BitString operator()(const BitString& x) const;
};

struct LamportVerifyKey {
  OwfSpec owf;
  BitString p0;
  BitString p1;

  const BitString& p(Bit m) const { return m ? p1 : p0; }
};

class LamportKeyPair {
 public:
  LamportKeyPair(BitString x0, BitString x1, OwfSpec owf);

  const LamportVerifyKey& vk() const noexcept { return vk_; }
  const BitString& secret(Bit m) const noexcept { return m ? x1_ : x0_; }
  bool used() const noexcept { return used_; }

  /// sigma_m = X_m. Throws KeyAlreadyUsed on the second call.
  BitString sign(Bit m);

  /// {n, H, X0, X1, P0, P1}, all strings hex.
  nlohmann::json to_json() const;
  static LamportKeyPair from_json(const nlohmann::json& j);

 private:
  BitString x0_;
  BitString x1_;
  LamportVerifyKey vk_;
  bool used_ = false;
};

LamportKeyPair lamport_gen(std::size_t n, Rng& rng, const std::string& owf = "sha256");

Verdict lamport_ver(const LamportVerifyKey& vk, Bit m, const BitString& sigma);

/// Dispute resolution: Alice is at fault iff Bob's claimed signature checks out.
Arbitration lamport_arbitrate(const LamportVerifyKey& vk, Bit m, const BitString& claimed);

}  // namespace qds
