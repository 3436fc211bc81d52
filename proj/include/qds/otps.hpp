#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qds/bits.hpp"
#include "qds/channels.hpp"
#include "qds/lamport.hpp"

namespace qds {

class Rng;

/// n is the key length per message bit (even); s_v the arbiter's threshold.
struct OtpsParams {
  std::size_t n = 0;
  double s_v = 0.2;

  /// Throws InvalidParameter unless n is even and positive and 0 < s_v < 1/4.
  void validate() const;
};

/// Alice's four strings: X^B_b and X^C_b for b in {0, 1}.
struct OtpsAliceKeys {
  std::array<BitString, 2> xb;
  std::array<BitString, 2> xc;
};

/// (index, value) pairs received from the other recipient, sorted by index.
struct ForwardedBits {
  std::vector<std::size_t> indices;
  BitString values;
};

/// Key material held by one recipient (Bob or Charlie).
struct OtpsHolder {
  Party who = Party::Bob;
  std::array<BitString, 2> own;                    // X^B_b at Bob, X^C_b at Charlie
  std::array<std::vector<std::size_t>, 2> sent;    // indices forwarded to the other
  std::array<ForwardedBits, 2> received;           // the other's forwarded bits
};

struct OtpsSignature {
  Bit b = 0;
  BitString xb;
  BitString xc;
};

struct SegmentCount {
  std::size_t mismatches = 0;
  std::size_t compared = 0;

  double fraction() const noexcept {
    return compared == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(compared);
  }
};

/// Mismatch counts a recipient sees for a claimed signature: against its own
/// key and against the bits forwarded to it.
struct HolderView {
  SegmentCount own;
  SegmentCount received;
};

HolderView count_mismatches(const OtpsHolder& holder, const OtpsSignature& sig);

OtpsAliceKeys otps_keygen(const OtpsParams& params, Rng& alice);

/// Sends X^B_b to Bob and X^C_b to Charlie under one-time pads.
std::pair<OtpsHolder, OtpsHolder> otps_distribute(const OtpsParams& params,
                                                   const OtpsAliceKeys& keys, PadStore& pad_ab,
                                                   AuthChannel& ch_ab, PadStore& pad_ac,
                                                   AuthChannel& ch_ac);

/// Bits one symmetrization message costs: an n-bit index mask plus n/2 values.
std::size_t otps_forward_message_bits(std::size_t n) noexcept;

/// Bob and Charlie each forward an independent uniform half of their key
/// (mask + values, under the Bob-Charlie pad) for both message bits.
void otps_symmetrize(const OtpsParams& params, OtpsHolder& bob, OtpsHolder& charlie,
                     PadStore& pad_bc, AuthChannel& ch_bc, AuthChannel& ch_cb, Rng& bob_rng,
                     Rng& charlie_rng);

OtpsSignature otps_sign(const OtpsAliceKeys& keys, Bit b);

/// Zero tolerance over everything Bob holds for bit b.
Verdict otps_verify(const OtpsHolder& bob, const OtpsSignature& sig);

/// AliceDishonest iff (a) no mismatch on the X^B_b bits Charlie got from Bob
/// and (b) fewer than s_v*n mismatches on Charlie's X^C_b.
Arbitration otps_arbitrate(const OtpsHolder& charlie, const OtpsSignature& sig, double s_v);

/// Thresholded variants for keys that carry channel noise: each segment's
/// mismatch fraction must stay below the threshold.
Verdict thresholded_verify(const OtpsHolder& bob, const OtpsSignature& sig, double s_a);
Arbitration thresholded_arbitrate(const OtpsHolder& charlie, const OtpsSignature& sig, double s_v);

}  // namespace qds
