#include "qds/p1.hpp"

#include <algorithm>
#include <cmath>

#include "qds/errors.hpp"
#include "qds/rng.hpp"

namespace qds {

void P1Params::validate() const {
  if (n == 0 || n % 2 != 0) throw InvalidParameter("key length n must be even and positive");
  if (!(p_e_expected >= 0.0 && p_e_expected < s_a))
    throw InvalidParameter("threshold ordering requires 0 <= p_e < s_a");
  if (!(s_a < s_v)) throw InvalidParameter("threshold ordering requires s_a < s_v");
  if (!(s_v < p_f)) throw InvalidParameter("threshold ordering requires s_v < p_f");
  if (!(eps_delta > 0.0 && eps_delta < 1.0)) throw InvalidParameter("eps_delta must lie in (0,1)");
  if (!(p_channel >= 0.0 && p_channel < 0.5)) throw InvalidParameter("p_channel must lie in [0, 0.5)");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw InvalidParameter("test_fraction must lie in (0,1)");
}

double MismatchCount::informative_fraction() const noexcept {
  return informative == 0 ? 0.0
                          : static_cast<double>(mismatches) / static_cast<double>(informative);
}

double MismatchCount::key_fraction(std::size_t n) const noexcept {
  return n == 0 ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(n);
}

P1KeyMaterial p1_material_from(PrivateKey bob_key, const PrivateKey& charlie_key) {
  P1KeyMaterial m;
  for (int b = 0; b < 2; ++b) {
    for (QandyChar c : bob_key.x[b]) m.for_bob[b].push_back(prepare(c));
    for (QandyChar c : charlie_key.x[b]) m.for_charlie[b].push_back(prepare(c));
  }
  m.key = std::move(bob_key);
  return m;
}

P1KeyMaterial p1_keygen(const P1Params& params, Rng& alice) {
  params.validate();
  PrivateKey key;
  for (int b = 0; b < 2; ++b) {
    key.x[b].reserve(params.n);
    for (std::size_t i = 0; i < params.n; ++i) key.x[b].push_back(random_char(alice));
  }
  return p1_material_from(key, key);
}

std::pair<RecipientState, RecipientState> p1_distribute(P1KeyMaterial& material,
                                                        QandyChannel& to_bob,
                                                        QandyChannel& to_charlie) {
  RecipientState bob;
  bob.who = Party::Bob;
  RecipientState charlie;
  charlie.who = Party::Charlie;
  for (int b = 0; b < 2; ++b) {
    auto& src_b = material.for_bob[b];
    for (std::size_t i = 0; i < src_b.size(); ++i)
      bob.qandies[b].push_back({i, to_bob.send(std::move(src_b[i])), Provenance::Kept});
    src_b.clear();
    auto& src_c = material.for_charlie[b];
    for (std::size_t i = 0; i < src_c.size(); ++i)
      charlie.qandies[b].push_back({i, to_charlie.send(std::move(src_c[i])), Provenance::Kept});
    src_c.clear();
  }
  return {std::move(bob), std::move(charlie)};
}

std::vector<std::size_t> p1_choose_forward(const RecipientState& r, Bit b, Rng& rng) {
  std::vector<std::size_t> pool;
  pool.reserve(r.qandies[b].size());
  for (const auto& h : r.qandies[b]) pool.push_back(h.index);
  return rng.sample_from(std::move(pool), r.qandies[b].size() / 2);
}

std::vector<HeldQandy> p1_take_handles(RecipientState& r, Bit b,
                                       const std::vector<std::size_t>& indices) {
  std::vector<HeldQandy> taken;
  std::vector<HeldQandy> kept;
  auto& held = r.qandies[b];
  for (auto& h : held) {
    if (std::binary_search(indices.begin(), indices.end(), h.index))
      taken.push_back(std::move(h));
    else
      kept.push_back(std::move(h));
  }
  held = std::move(kept);
  auto& fwd = r.forwarded[b];
  fwd.insert(fwd.end(), indices.begin(), indices.end());
  std::sort(fwd.begin(), fwd.end());
  return taken;
}

void p1_deliver(std::vector<HeldQandy> handles, QandyChannel& ch, RecipientState& dest, Bit b) {
  for (auto& h : handles)
    dest.qandies[b].push_back({h.index, ch.send(std::move(h.q)), Provenance::Received});
}

void p1_measure_all(RecipientState& r, Bit b, Rng& rng) {
  auto& held = r.qandies[b];
  for (auto& h : held) {
    const Basis basis = rng.coin() ? Basis::Taste : Basis::Color;
    const Bit outcome = measure(h.q, basis, rng);
    r.records[b].push_back({{h.index, basis, outcome}, h.prov});
  }
  held.clear();
  std::sort(r.records[b].begin(), r.records[b].end(),
            [](const HeldRecord& x, const HeldRecord& y) { return x.rec.index < y.rec.index; });
}

void p1_symmetrize(RecipientState& bob, RecipientState& charlie, QandyChannel& bob_to_charlie,
                   QandyChannel& charlie_to_bob, Rng& bob_rng, Rng& charlie_rng) {
  for (Bit b = 0; b < 2; ++b) {
    auto fb = p1_choose_forward(bob, b, bob_rng);
    auto fc = p1_choose_forward(charlie, b, charlie_rng);
    auto from_bob = p1_take_handles(bob, b, fb);
    auto from_charlie = p1_take_handles(charlie, b, fc);
    p1_deliver(std::move(from_bob), bob_to_charlie, charlie, b);
    p1_deliver(std::move(from_charlie), charlie_to_bob, bob, b);
    p1_measure_all(bob, b, bob_rng);
    p1_measure_all(charlie, b, charlie_rng);
  }
}

std::vector<std::size_t> p1_choose_reveals(const P1Params& params, const RecipientState& r,
                                           Bit b, Rng& alice, Rng& recipient) {
  const auto k = static_cast<std::size_t>(std::llround(params.test_fraction * static_cast<double>(params.n)));
  const std::size_t k_alice = std::min(k / 2, params.n);
  auto picked = alice.sample_indices(params.n, k_alice);

  std::vector<std::size_t> pool;
  for (const auto& hr : r.records[b]) {
    const std::size_t i = hr.rec.index;
    if (!pool.empty() && pool.back() == i) continue;
    if (std::binary_search(picked.begin(), picked.end(), i)) continue;
    pool.push_back(i);
  }
  const std::size_t k_rec = std::min(k - k_alice, pool.size());
  auto more = recipient.sample_from(std::move(pool), k_rec);

  std::vector<std::size_t> out;
  out.reserve(picked.size() + more.size());
  std::merge(picked.begin(), picked.end(), more.begin(), more.end(), std::back_inserter(out));
  return out;
}

double hoeffding_delta(double eps, std::size_t t) {
  if (t == 0) throw InsufficientSample();
  return std::sqrt(std::log(1.0 / eps) / (2.0 * static_cast<double>(t)));
}

TestReport p1_test(const P1Params& params, std::span<const QandyChar> disclosed_key,
                   const RecipientState& r, Bit b, std::vector<std::size_t> revealed) {
  std::sort(revealed.begin(), revealed.end());
  TestReport rep;
  for (const auto& hr : r.records[b]) {
    if (!std::binary_search(revealed.begin(), revealed.end(), hr.rec.index)) continue;
    if (hr.rec.index >= disclosed_key.size()) continue;
    const QandyChar c = disclosed_key[hr.rec.index];
    if (basis_of(c) != hr.rec.basis) continue;
    ++rep.t;
    if (mismatch(c, hr.rec)) ++rep.mismatches;
  }
  rep.revealed = std::move(revealed);
  if (rep.t == 0) throw InsufficientSample();
  rep.rate = static_cast<double>(rep.mismatches) / static_cast<double>(rep.t);
  rep.delta = hoeffding_delta(params.eps_delta, rep.t);
  rep.threshold = std::max(params.s_a - rep.delta, 0.0);
  rep.abort = rep.rate > rep.threshold;
  return rep;
}

P1Signature p1_sign(PrivateKey& key, Bit b) {
  if (key.used[b]) throw KeyAlreadyUsed();
  key.used[b] = true;
  return {b, key.x[b]};
}

MismatchCount p1_count(const RecipientState& r, const P1Signature& sig, bool apply_exclusion) {
  MismatchCount mc;
  const auto& ex = r.excluded[sig.b];
  for (const auto& hr : r.records[sig.b]) {
    const std::size_t i = hr.rec.index;
    if (apply_exclusion && std::binary_search(ex.begin(), ex.end(), i)) continue;
    const auto p = static_cast<std::size_t>(hr.prov);
    ++mc.records;
    ++mc.records_by_prov[p];
    // A missing or short declaration cannot be checked; treat it as contradicted.
    if (i >= sig.chars.size()) {
      ++mc.informative;
      ++mc.informative_by_prov[p];
      ++mc.mismatches;
      ++mc.mismatches_by_prov[p];
      continue;
    }
    const QandyChar c = sig.chars[i];
    if (basis_of(c) != hr.rec.basis) continue;
    ++mc.informative;
    ++mc.informative_by_prov[p];
    if (mismatch(c, hr.rec)) {
      ++mc.mismatches;
      ++mc.mismatches_by_prov[p];
    }
  }
  return mc;
}

P1Check p1_verify(const RecipientState& bob, const P1Signature& sig, double s_a) {
  P1Check out;
  out.count = p1_count(bob, sig);
  out.verdict = out.count.informative_fraction() < s_a ? Verdict::Acc : Verdict::Rej;
  return out;
}

P1Arbitration p1_arbitrate(const RecipientState& charlie, const P1Signature& sig, double s_v) {
  P1Arbitration out;
  out.count = p1_count(charlie, sig);
  out.result = out.count.informative_fraction() < s_v ? Arbitration::AliceDishonest
                                                      : Arbitration::BobDishonest;
  return out;
}

std::vector<int> p1_copy_counts(const RecipientState& r, Bit b, std::size_t n) {
  std::vector<int> counts(n, 0);
  for (const auto& hr : r.records[b])
    if (hr.rec.index < n) ++counts[hr.rec.index];
  for (const auto& h : r.qandies[b])
    if (h.index < n) ++counts[h.index];
  return counts;
}

}  // namespace qds
