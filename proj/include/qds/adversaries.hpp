#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qds/bits.hpp"
#include "qds/otps.hpp"
#include "qds/p1.hpp"

namespace qds {

class Rng;

enum class Role : std::uint8_t { Honest, ForgerBob, RepudiatorAlice, SplitKeyAlice };

std::string_view role_name(Role r) noexcept;
/// Accepts "honest", "forger", "repudiator", "split-key" and the enum names.
Role role_from_name(std::string_view name);

/// How a repudiating Alice tampers with her disclosure.
enum class FlipKind : std::uint8_t { Value, Basis };

/// One dishonest party at most; parameters only matter for their role.
struct Strategy {
  Role role = Role::Honest;
  /// Repudiation budget; defaults to floor(n(s_v - s_a)/2) when unset.
  std::optional<std::size_t> budget;
  FlipKind flip = FlipKind::Value;
};

/// floor(n(s_v - s_a)/2), robust to representation error in the product.
std::size_t default_repudiation_budget(std::size_t n, double s_a, double s_v);

/// What the forging Bob learned from his copy of Q_{b'}.
struct ForgerObservation {
  Bit target = 1;
  std::vector<QandyChar> declared;   // measured character per index
  std::vector<HeldRecord> records;   // his own (kept-copy) measurements
};

/// Measures every qandy Bob holds for `target` in a uniformly random basis
/// and records the observed character. Must run before symmetrization; his
/// holdings for `target` are consumed.
ForgerObservation forge_min_error(RecipientState& bob, Bit target, std::size_t n, Rng& rng);

/// Fresh qandies equal to Bob's observations at `indices`, ready to forward.
std::vector<HeldQandy> forger_regenerate(const ForgerObservation& obs,
                                         const std::vector<std::size_t>& indices);

P1Signature forged_signature(const ForgerObservation& obs);

/// Flips `budget` distinct, uniformly chosen positions of X_b. Value flips
/// keep the basis (R<->G, C<->V); basis flips swap to the conjugate basis
/// with a uniform value. Throws BudgetOutOfRange unless budget <= |X_b|.
std::vector<QandyChar> repudiate_budget(const std::vector<QandyChar>& x, std::size_t budget,
                                        Rng& rng, FlipKind kind = FlipKind::Value);

/// Bit-string counterpart for the classical schemes.
BitString repudiate_bits(const BitString& x, std::size_t budget, Rng& rng);

/// Independent private keys for Bob's and Charlie's copies.
struct SplitKeys {
  PrivateKey for_bob;
  PrivateKey for_charlie;
};

SplitKeys split_key_alice(const P1Params& params, Rng& alice);

/// OTP-S forger: Bob keeps his own X^B_{b'} and fills X^C_{b'} with the bits
/// Charlie forwarded to him, guessing the rest uniformly.
OtpsSignature forge_otps(const OtpsHolder& bob, Bit target, std::size_t n, Rng& rng);

}  // namespace qds
