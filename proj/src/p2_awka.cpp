#include "qds/p2_awka.hpp"

#include <algorithm>
#include <cmath>

#include "qds/errors.hpp"
#include "qds/rng.hpp"

namespace qds {

std::string_view variant_name(Variant v) noexcept { return v == Variant::P2 ? "p2" : "awka"; }

void P2AwkaParams::validate() const {
  if (n == 0 || n % 2 != 0) throw InvalidParameter("key length n must be even and positive");
  if (!(p_channel >= 0.0 && p_channel < 0.5)) throw InvalidParameter("p_channel must lie in [0, 0.5)");
  if (!(s_v > 0.0 && s_v < 0.25)) throw InvalidParameter("arbiter threshold requires 0 < s_v < 1/4");
  if (variant == Variant::Awka) {
    if (!(p_e_expected >= 0.0 && p_e_expected < s_a))
      throw InvalidParameter("threshold ordering requires 0 <= p_e < s_a");
    if (!(s_a < s_v)) throw InvalidParameter("threshold ordering requires s_a < s_v");
  }
}

KeyBudget key_budget(const P2AwkaParams& params) {
  KeyBudget kb;
  kb.ab = 2 * params.n + kAuthReserveBits;
  kb.ac = 2 * params.n + kAuthReserveBits;
  kb.bc = 4 * otps_forward_message_bits(params.n) + kAuthReserveBits;
  return kb;
}

std::size_t default_p2_budget(const P2AwkaParams& params) {
  const double n = static_cast<double>(params.n);
  if (params.variant == Variant::P2)
    return static_cast<std::size_t>(std::ceil(params.s_v * n - 1e-9));
  const double x = (params.s_a + params.s_v) / 2.0 - params.p_channel;
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(x * n + 1e-9));
}

double P2AwkaResult::qandies_per_signature_bit() const noexcept {
  return signature_bits == 0 ? 0.0
                             : static_cast<double>(qandies_sent) / static_cast<double>(signature_bits);
}

nlohmann::ordered_json P2AwkaResult::to_json() const {
  nlohmann::ordered_json j;
  j["protocol"] = variant_name(variant);
  j["strategy"] = role_name(role);
  j["outcome"] = outcome_name(outcome);
  j["aborted"] = aborted;
  if (!abort_reason.empty()) j["abort_reason"] = abort_reason;
  if (bob) j["bob"] = *bob == Verdict::Acc ? "ACC" : "REJ";
  if (charlie) j["charlie"] = *charlie == Arbitration::AliceDishonest ? "AcceptBob" : "RejectBob";
  auto seg = [](const SegmentCount& s) {
    return nlohmann::ordered_json{{"mismatches", s.mismatches}, {"compared", s.compared}};
  };
  j["mismatch_counts"] = {
      {"bob", {{"own", seg(bob_view.own)}, {"received", seg(bob_view.received)}}},
      {"charlie", {{"own", seg(charlie_view.own)}, {"received", seg(charlie_view.received)}}}};
  nlohmann::ordered_json q = nlohmann::ordered_json::array();
  for (const auto& r : qkd) q.push_back(r.summary());
  j["qkd"] = q;
  j["keys_correct"] = keys_correct;
  j["qandies_sent"] = qandies_sent;
  j["signature_bits"] = signature_bits;
  return j;
}

namespace {

struct Session {
  QkdResult result;
  std::size_t sent = 0;
};

Session run_session(const P2AwkaParams& params, QkdMode mode, Party sender, Party receiver,
                    std::size_t target, std::uint64_t seed, std::uint64_t stream,
                    Transcript& log) {
  QkdConfig cfg = params.qkd;
  cfg.mode = mode;
  cfg.sender = sender;
  cfg.receiver = receiver;
  if (cfg.n_sent == 0)
    cfg.n_sent = qkd_auto_n_sent(target, mode, params.p_channel, cfg.test_fraction, cfg.eps_pa);
  QandyChannel ch(params.p_channel, Rng(seed, stream));
  Rng s_rng(seed, stream + 100);
  Rng r_rng(seed, stream + 200);
  AuthChannel auth(sender, receiver, log);
  Session s;
  try {
    s.result = qkd_session(cfg, ch, s_rng, r_rng, auth);
  } catch (const KeyTooShort&) {
    s.result.mode = mode;
    s.result.n_sent = cfg.n_sent;
  }
  s.sent = ch.sent();
  return s;
}

BitString slice(const BitString& k, std::size_t from, std::size_t len) {
  return BitString(k.begin() + static_cast<std::ptrdiff_t>(from),
                   k.begin() + static_cast<std::ptrdiff_t>(from + len));
}

P2AwkaResult run(const P2AwkaParams& params, Variant variant, const Strategy& strategy,
                 std::uint64_t seed, std::uint64_t trial) {
  P2AwkaParams p = params;
  p.variant = variant;
  p.validate();
  if (strategy.role == Role::SplitKeyAlice)
    throw InvalidParameter("split-key strategy applies only to qandy public keys");

  P2AwkaResult res;
  res.variant = variant;
  res.role = strategy.role;
  res.transcript = Transcript(trial);
  res.signature_bits = 4 * p.n;
  const KeyBudget kb = key_budget(p);
  const QkdMode sig_mode = variant == Variant::P2 ? QkdMode::Full : QkdMode::TestOnly;
  // For TEST-only keys only the signature strings are needed; tags ride on the B-C pad budget.
  const std::size_t sig_target = variant == Variant::P2 ? kb.ab : 2 * p.n;

  const Party ab_sender = variant == Variant::P2 ? Party::Alice : Party::Bob;
  const Party ac_sender = variant == Variant::P2 ? Party::Alice : Party::Charlie;
  Session ab = run_session(p, sig_mode, ab_sender, ab_sender == Party::Alice ? Party::Bob : Party::Alice,
                           sig_target, seed, streams::kQkdAB, res.transcript);
  Session ac = run_session(p, sig_mode, ac_sender,
                           ac_sender == Party::Alice ? Party::Charlie : Party::Alice, sig_target,
                           seed, streams::kQkdAC, res.transcript);
  Session bc = run_session(p, QkdMode::Full, Party::Bob, Party::Charlie, kb.bc, seed,
                           streams::kQkdBC, res.transcript);
  res.qkd = {ab.result, ac.result, bc.result};
  res.qandies_sent = ab.sent + ac.sent + bc.sent;

  auto fail = [&](std::string why) {
    res.aborted = true;
    res.abort_reason = std::move(why);
    res.outcome = classify(strategy.role, true, std::nullopt, std::nullopt);
    return res;
  };
  for (const auto& s : res.qkd)
    if (s.aborted) return fail("qkd abort");
  if (res.qkd[0].final_length < sig_target || res.qkd[1].final_length < sig_target ||
      res.qkd[2].final_length < kb.bc)
    return fail("key too short");

  Rng alice(seed, streams::kAlice);
  Rng bob_rng(seed, streams::kBob);
  Rng charlie_rng(seed, streams::kCharlie);
  Rng adv(seed, streams::kAdversary);
  AuthChannel ch_ab(Party::Alice, Party::Bob, res.transcript);
  AuthChannel ch_ac(Party::Alice, Party::Charlie, res.transcript);
  AuthChannel ch_bc(Party::Bob, Party::Charlie, res.transcript);
  AuthChannel ch_cb(Party::Charlie, Party::Bob, res.transcript);
  const OtpsParams op{p.n, p.s_v};

  OtpsAliceKeys keys;
  OtpsHolder bob;
  OtpsHolder charlie;
  if (variant == Variant::P2) {
    PadStore pad_ab(res.qkd[0].key_sender);
    PadStore pad_ac(res.qkd[1].key_sender);
    keys = otps_keygen(op, alice);
    std::tie(bob, charlie) = otps_distribute(op, keys, pad_ab, ch_ab, pad_ac, ch_ac);
    res.keys_correct = bob.own == keys.xb && charlie.own == keys.xc;
  } else {
    // Recipients sent; Alice's copy is the receiver side of each session.
    bob = OtpsHolder{Party::Bob, {}, {}, {}};
    charlie = OtpsHolder{Party::Charlie, {}, {}, {}};
    for (Bit b = 0; b < 2; ++b) {
      keys.xb[b] = slice(res.qkd[0].key_receiver, b * p.n, p.n);
      keys.xc[b] = slice(res.qkd[1].key_receiver, b * p.n, p.n);
      bob.own[b] = slice(res.qkd[0].key_sender, b * p.n, p.n);
      charlie.own[b] = slice(res.qkd[1].key_sender, b * p.n, p.n);
    }
  }
  PadStore pad_bc(res.qkd[2].key_sender);
  otps_symmetrize(op, bob, charlie, pad_bc, ch_bc, ch_cb, bob_rng, charlie_rng);

  OtpsSignature sig;
  switch (strategy.role) {
    case Role::Honest:
      sig = otps_sign(keys, 0);
      break;
    case Role::RepudiatorAlice: {
      sig = otps_sign(keys, 0);
      const std::size_t budget = strategy.budget.value_or(p.budget.value_or(default_p2_budget(p)));
      sig.xc = repudiate_bits(sig.xc, budget, adv);
      break;
    }
    case Role::ForgerBob:
      sig = forge_otps(bob, 1, p.n, adv);
      break;
    case Role::SplitKeyAlice:
      break;
  }

  if (strategy.role != Role::ForgerBob) {
    ch_ab.send("sign", "signature", pack_bits(sig.xb));
    ch_ab.send("sign", "signature", pack_bits(sig.xc));
    res.bob_view = count_mismatches(bob, sig);
    res.bob = variant == Variant::P2 ? otps_verify(bob, sig) : thresholded_verify(bob, sig, p.s_a);
  }
  ch_bc.send("dispute", "signature", pack_bits(sig.xc));
  res.charlie_view = count_mismatches(charlie, sig);
  res.charlie = variant == Variant::P2 ? otps_arbitrate(charlie, sig, p.s_v)
                                       : thresholded_arbitrate(charlie, sig, p.s_v);
  res.outcome = classify(strategy.role, false, res.bob, res.charlie);
  return res;
}

}  // namespace

P2AwkaResult p2_run(const P2AwkaParams& params, const Strategy& strategy, std::uint64_t seed,
                    std::uint64_t trial) {
  return run(params, Variant::P2, strategy, seed, trial);
}

P2AwkaResult awka_run(const P2AwkaParams& params, const Strategy& strategy, std::uint64_t seed,
                      std::uint64_t trial) {
  return run(params, Variant::Awka, strategy, seed, trial);
}

}  // namespace qds
