#include "qds/otps.hpp"

#include <algorithm>

#include "qds/errors.hpp"
#include "qds/rng.hpp"

namespace qds {

void OtpsParams::validate() const {
  if (n == 0 || n % 2 != 0) throw InvalidParameter("OTP-S key length n must be even and positive");
  if (!(s_v > 0.0 && s_v < 0.25)) throw InvalidParameter("OTP-S requires 0 < s_v < 1/4");
}

HolderView count_mismatches(const OtpsHolder& holder, const OtpsSignature& sig) {
  const bool is_bob = holder.who == Party::Bob;
  const BitString& own_claim = is_bob ? sig.xb : sig.xc;
  const BitString& other_claim = is_bob ? sig.xc : sig.xb;
  const BitString& own = holder.own[sig.b];
  const ForwardedBits& fwd = holder.received[sig.b];

  HolderView view;
  if (own_claim.size() != own.size()) {
    view.own = {own.size(), own.size()};
  } else {
    view.own = {hamming_distance(own, own_claim), own.size()};
  }
  view.received.compared = fwd.indices.size();
  for (std::size_t k = 0; k < fwd.indices.size(); ++k) {
    const std::size_t i = fwd.indices[k];
    if (i >= other_claim.size() || other_claim[i] != fwd.values[k]) ++view.received.mismatches;
  }
  return view;
}

OtpsAliceKeys otps_keygen(const OtpsParams& params, Rng& alice) {
  params.validate();
  OtpsAliceKeys keys;
  for (int b = 0; b < 2; ++b) {
    keys.xb[b] = random_bits(alice, params.n);
    keys.xc[b] = random_bits(alice, params.n);
  }
  return keys;
}

std::pair<OtpsHolder, OtpsHolder> otps_distribute(const OtpsParams& params,
                                                   const OtpsAliceKeys& keys, PadStore& pad_ab,
                                                   AuthChannel& ch_ab, PadStore& pad_ac,
                                                   AuthChannel& ch_ac) {
  params.validate();
  OtpsHolder bob{Party::Bob, {}, {}, {}};
  OtpsHolder charlie{Party::Charlie, {}, {}, {}};
  for (int b = 0; b < 2; ++b) {
    bob.own[b] = otp_send(pad_ab, ch_ab, "distribute", keys.xb[b]);
    charlie.own[b] = otp_send(pad_ac, ch_ac, "distribute", keys.xc[b]);
  }
  return {std::move(bob), std::move(charlie)};
}

std::size_t otps_forward_message_bits(std::size_t n) noexcept { return n + n / 2; }

namespace {

BitString encode_forward(const BitString& key, const std::vector<std::size_t>& idx) {
  BitString msg(key.size(), 0);
  for (std::size_t i : idx) msg[i] = 1;
  for (std::size_t i : idx) msg.push_back(key[i]);
  return msg;
}

ForwardedBits decode_forward(const BitString& msg, std::size_t n) {
  ForwardedBits out;
  for (std::size_t i = 0; i < n; ++i)
    if (msg[i]) out.indices.push_back(i);
  out.values.assign(msg.begin() + static_cast<std::ptrdiff_t>(n), msg.end());
  return out;
}

}  // namespace

void otps_symmetrize(const OtpsParams& params, OtpsHolder& bob, OtpsHolder& charlie,
                     PadStore& pad_bc, AuthChannel& ch_bc, AuthChannel& ch_cb, Rng& bob_rng,
                     Rng& charlie_rng) {
  params.validate();
  const std::size_t n = params.n;
  for (int b = 0; b < 2; ++b) {
    bob.sent[b] = bob_rng.sample_indices(n, n / 2);
    charlie.sent[b] = charlie_rng.sample_indices(n, n / 2);
    const BitString to_charlie =
        otp_send(pad_bc, ch_bc, "symmetrize", encode_forward(bob.own[b], bob.sent[b]));
    const BitString to_bob =
        otp_send(pad_bc, ch_cb, "symmetrize", encode_forward(charlie.own[b], charlie.sent[b]));
    charlie.received[b] = decode_forward(to_charlie, n);
    bob.received[b] = decode_forward(to_bob, n);
  }
}

OtpsSignature otps_sign(const OtpsAliceKeys& keys, Bit b) { return {b, keys.xb[b], keys.xc[b]}; }

Verdict otps_verify(const OtpsHolder& bob, const OtpsSignature& sig) {
  const HolderView v = count_mismatches(bob, sig);
  return v.own.mismatches == 0 && v.received.mismatches == 0 ? Verdict::Acc : Verdict::Rej;
}

Arbitration otps_arbitrate(const OtpsHolder& charlie, const OtpsSignature& sig, double s_v) {
  const HolderView v = count_mismatches(charlie, sig);
  const double limit = s_v * static_cast<double>(v.own.compared);
  const bool accept = v.received.mismatches == 0 && static_cast<double>(v.own.mismatches) < limit;
  return accept ? Arbitration::AliceDishonest : Arbitration::BobDishonest;
}

Verdict thresholded_verify(const OtpsHolder& bob, const OtpsSignature& sig, double s_a) {
  const HolderView v = count_mismatches(bob, sig);
  return v.own.fraction() < s_a && v.received.fraction() < s_a ? Verdict::Acc : Verdict::Rej;
}

Arbitration thresholded_arbitrate(const OtpsHolder& charlie, const OtpsSignature& sig,
                                  double s_v) {
  const HolderView v = count_mismatches(charlie, sig);
  return v.own.fraction() < s_v && v.received.fraction() < s_v ? Arbitration::AliceDishonest
                                                               : Arbitration::BobDishonest;
}

}  // namespace qds
