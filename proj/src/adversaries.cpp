#include "qds/adversaries.hpp"

#include <algorithm>
#include <cmath>

#include "qds/errors.hpp"
#include "qds/rng.hpp"

namespace qds {

std::string_view role_name(Role r) noexcept {
  switch (r) {
    case Role::Honest: return "honest";
    case Role::ForgerBob: return "forger";
    case Role::RepudiatorAlice: return "repudiator";
    case Role::SplitKeyAlice: return "split-key";
  }
  return "?";
}

Role role_from_name(std::string_view name) {
  if (name == "honest" || name == "Honest") return Role::Honest;
  if (name == "forger" || name == "ForgerBob") return Role::ForgerBob;
  if (name == "repudiator" || name == "RepudiatorAlice") return Role::RepudiatorAlice;
  if (name == "split-key" || name == "split_key" || name == "SplitKeyAlice")
    return Role::SplitKeyAlice;
  throw InvalidParameter("unknown strategy '" + std::string(name) + "'");
}

std::size_t default_repudiation_budget(std::size_t n, double s_a, double s_v) {
  const double raw = static_cast<double>(n) * (s_v - s_a) / 2.0;
  if (raw <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(raw + 1e-9));
}

ForgerObservation forge_min_error(RecipientState& bob, Bit target, std::size_t n, Rng& rng) {
  ForgerObservation obs;
  obs.target = target;
  obs.declared.assign(n, QandyChar::R);
  for (auto& h : bob.qandies[target]) {
    const Basis basis = rng.coin() ? Basis::Taste : Basis::Color;
    const Bit outcome = measure(h.q, basis, rng);
    if (h.index < n) obs.declared[h.index] = make_char(basis, outcome);
    obs.records.push_back({{h.index, basis, outcome}, h.prov});
  }
  bob.qandies[target].clear();
  return obs;
}

std::vector<HeldQandy> forger_regenerate(const ForgerObservation& obs,
                                         const std::vector<std::size_t>& indices) {
  std::vector<HeldQandy> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back({i, prepare(obs.declared.at(i)), Provenance::Kept});
  return out;
}

P1Signature forged_signature(const ForgerObservation& obs) { return {obs.target, obs.declared}; }

std::vector<QandyChar> repudiate_budget(const std::vector<QandyChar>& x, std::size_t budget,
                                        Rng& rng, FlipKind kind) {
  if (budget > x.size())
    throw BudgetOutOfRange("budget " + std::to_string(budget) + " exceeds key length " +
                           std::to_string(x.size()));
  std::vector<QandyChar> out = x;
  for (std::size_t i : rng.sample_indices(x.size(), budget)) {
    if (kind == FlipKind::Value)
      out[i] = flip_value(out[i]);
    else
      out[i] = make_char(conjugate(basis_of(out[i])), rng.coin() ? 1 : 0);
  }
  return out;
}

BitString repudiate_bits(const BitString& x, std::size_t budget, Rng& rng) {
  if (budget > x.size())
    throw BudgetOutOfRange("budget " + std::to_string(budget) + " exceeds key length " +
                           std::to_string(x.size()));
  BitString out = x;
  for (std::size_t i : rng.sample_indices(x.size(), budget)) out[i] ^= 1u;
  return out;
}

SplitKeys split_key_alice(const P1Params& params, Rng& alice) {
  params.validate();
  SplitKeys keys;
  for (PrivateKey* k : {&keys.for_bob, &keys.for_charlie})
    for (int b = 0; b < 2; ++b)
      for (std::size_t i = 0; i < params.n; ++i) k->x[b].push_back(random_char(alice));
  return keys;
}

OtpsSignature forge_otps(const OtpsHolder& bob, Bit target, std::size_t n, Rng& rng) {
  OtpsSignature sig;
  sig.b = target;
  sig.xb = bob.own[target];
  sig.xc = random_bits(rng, n);
  const ForwardedBits& fwd = bob.received[target];
  for (std::size_t k = 0; k < fwd.indices.size(); ++k)
    if (fwd.indices[k] < n) sig.xc[fwd.indices[k]] = fwd.values[k];
  return sig;
}

}  // namespace qds

#include "qds/outcome.hpp"

namespace qds {

std::string_view outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::HonestAcc: return "honest_acc";
    case Outcome::HonestAbort: return "honest_abort";
    case Outcome::ForgeSucc: return "forge_succ";
    case Outcome::ForgeFail: return "forge_fail";
    case Outcome::RepudSucc: return "repud_succ";
    case Outcome::RepudFail: return "repud_fail";
  }
  return "?";
}

Outcome classify(Role role, bool aborted, std::optional<Verdict> bob,
                 std::optional<Arbitration> arbiter) {
  switch (role) {
    case Role::Honest:
      return (aborted || bob != Verdict::Acc) ? Outcome::HonestAbort : Outcome::HonestAcc;
    case Role::ForgerBob:
      return (!aborted && arbiter == Arbitration::AliceDishonest) ? Outcome::ForgeSucc
                                                                  : Outcome::ForgeFail;
    case Role::RepudiatorAlice:
    case Role::SplitKeyAlice:
      return (!aborted && bob == Verdict::Acc && arbiter == Arbitration::BobDishonest)
                 ? Outcome::RepudSucc
                 : Outcome::RepudFail;
  }
  return Outcome::HonestAbort;
}

}  // namespace qds
