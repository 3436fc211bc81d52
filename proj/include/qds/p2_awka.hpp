#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "qds/adversaries.hpp"
#include "qds/channels.hpp"
#include "qds/otps.hpp"
#include "qds/outcome.hpp"
#include "qds/qkd.hpp"

namespace qds {

enum class Variant : std::uint8_t { P2, Awka };

std::string_view variant_name(Variant v) noexcept;

struct P2AwkaParams {
  std::size_t n = 256;
  Variant variant = Variant::P2;
  /// Template for every QKD session; n_sent == 0 sizes each session from its
  /// key budget. mode, sender and receiver are set per session.
  QkdConfig qkd{.n_sent = 0};
  double p_channel = 0.0;
  /// Arbiter threshold (both variants).
  double s_v = 0.10;
  /// Recipient threshold (AWKA only).
  double s_a = 0.06;
  double p_e_expected = 0.0;
  /// Repudiation flips; unset picks the variant default.
  std::optional<std::size_t> budget;

  /// P2: 0 < s_v < 1/4. AWKA: p_e < s_a < s_v < 1/4.
  void validate() const;
};

/// Key bits each pair must end up with before signing starts.
struct KeyBudget {
  std::size_t ab = 0;
  std::size_t ac = 0;
  std::size_t bc = 0;
};

/// Tag reserve per pair: authentication for every classical message the
/// signature phase sends.
inline constexpr std::size_t kAuthReserveBits = 16 * AuthChannel::kDefaultTagBits;

KeyBudget key_budget(const P2AwkaParams& params);

/// Flips a repudiating Alice injects into X^C_b. P2: ceil(s_v n), the least
/// that makes Charlie's count reach s_v n. AWKA: n((s_a+s_v)/2 - p_channel),
/// aiming between the two thresholds after channel noise.
std::size_t default_p2_budget(const P2AwkaParams& params);

struct P2AwkaResult {
  Variant variant = Variant::P2;
  Role role = Role::Honest;
  bool aborted = false;
  std::string abort_reason;
  /// Sessions in order A-B, A-C, B-C.
  std::array<QkdResult, 3> qkd;
  std::optional<Verdict> bob;
  std::optional<Arbitration> charlie;
  HolderView bob_view;
  HolderView charlie_view;
  /// P2: every holder's key equals Alice's. AWKA: not applicable (true).
  bool keys_correct = true;
  std::size_t qandies_sent = 0;
  std::size_t signature_bits = 0;
  Outcome outcome = Outcome::HonestAbort;
  Transcript transcript;

  double qandies_per_signature_bit() const noexcept;
  nlohmann::ordered_json to_json() const;
};

/// OTP-S over three full-QKD pads (A-B, A-C with Alice sending, B-C with Bob
/// sending). Zero-tolerance verification, s_v arbitration.
P2AwkaResult p2_run(const P2AwkaParams& params, const Strategy& strategy, std::uint64_t seed,
                    std::uint64_t trial = 0);

/// Same skeleton with TEST-only A-B and A-C sessions (recipient sending);
/// the raw correlated keys are the signature keys and both checks are
/// thresholded. Bob-Charlie symmetrization still runs over a full-QKD pad.
P2AwkaResult awka_run(const P2AwkaParams& params, const Strategy& strategy, std::uint64_t seed,
                      std::uint64_t trial = 0);

}  // namespace qds
