#include <doctest.h>

#include <cmath>

#include "qds/adversaries.hpp"
#include "qds/errors.hpp"
#include "qds/otps.hpp"
#include "qds/rng.hpp"
#include "qds/stats.hpp"

using namespace qds;

namespace {

struct Setup {
  OtpsParams params;
  Transcript log;
  PadStore pad_ab;
  PadStore pad_ac;
  PadStore pad_bc;
  AuthChannel ab{Party::Alice, Party::Bob, log};
  AuthChannel ac{Party::Alice, Party::Charlie, log};
  AuthChannel bc{Party::Bob, Party::Charlie, log};
  AuthChannel cb{Party::Charlie, Party::Bob, log};
  OtpsAliceKeys keys;
  OtpsHolder bob;
  OtpsHolder charlie;

  Setup(std::size_t n, double s_v, std::uint64_t seed)
      : params{n, s_v},
        pad_ab(random_pad(seed, 2 * n)),
        pad_ac(random_pad(seed + 1, 2 * n)),
        pad_bc(random_pad(seed + 2, 4 * otps_forward_message_bits(n))) {
    Rng alice(seed, 1), b(seed, 2), c(seed, 3);
    keys = otps_keygen(params, alice);
    std::tie(bob, charlie) = otps_distribute(params, keys, pad_ab, ab, pad_ac, ac);
    otps_symmetrize(params, bob, charlie, pad_bc, bc, cb, b, c);
  }

  static BitString random_pad(std::uint64_t seed, std::size_t n) {
    Rng r(seed, 99);
    return random_bits(r, n);
  }
};

}  // namespace

TEST_CASE("s_v validation") {
  CHECK_NOTHROW((OtpsParams{64, 0.2}.validate()));
  CHECK_THROWS_AS((OtpsParams{64, 0.25}.validate()), InvalidParameter);
  CHECK_THROWS_AS((OtpsParams{64, 0.3}.validate()), InvalidParameter);
  CHECK_THROWS_AS((OtpsParams{64, 0.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((OtpsParams{63, 0.1}.validate()), InvalidParameter);
}

TEST_CASE("honest run accepts and arbitrates for Bob") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Setup st(64, 0.2, s);
    CHECK(st.bob.own == st.keys.xb);
    CHECK(st.charlie.own == st.keys.xc);
    const auto sig = otps_sign(st.keys, s & 1);
    CHECK(otps_verify(st.bob, sig) == Verdict::Acc);
    CHECK(otps_arbitrate(st.charlie, sig, 0.2) == Arbitration::AliceDishonest);
  }
}

TEST_CASE("symmetrization forwards exactly half, pads fully used") {
  Setup st(100, 0.2, 11);
  for (int b = 0; b < 2; ++b) {
    CHECK(st.bob.sent[b].size() == 50);
    CHECK(st.charlie.received[b].indices == st.bob.sent[b]);
    for (std::size_t k = 0; k < 50; ++k)
      CHECK(st.charlie.received[b].values[k] == st.keys.xb[b][st.bob.sent[b][k]]);
  }
  CHECK(st.pad_bc.remaining() == 0);
  CHECK(st.pad_ab.remaining() == 0);
}

TEST_CASE("guessed X^C mismatch fraction sits at 1/4") {
  const std::size_t n = 256;
  std::size_t mism = 0, total = 0;
  Rng adv(5, 0);
  for (std::uint64_t s = 0; s < 40; ++s) {
    Setup st(n, 0.2, 100 + s);
    const auto forged = forge_otps(st.bob, 1, n, adv);
    const auto view = count_mismatches(st.charlie, forged);
    CHECK(view.received.mismatches == 0);
    mism += view.own.mismatches;
    total += view.own.compared;
    CHECK(otps_arbitrate(st.charlie, forged, 0.2) == Arbitration::BobDishonest);
  }
  const double f = double(mism) / double(total);
  CHECK(std::abs(f - 0.25) < 3 * binomial_sigma(0.25, total));
}

TEST_CASE("arbitration rule (a): one bad forwarded X^B bit sinks Bob") {
  Setup st(64, 0.2, 21);
  auto sig = otps_sign(st.keys, 0);
  sig.xb[st.bob.sent[0].front()] ^= 1;
  CHECK(otps_arbitrate(st.charlie, sig, 0.2) == Arbitration::BobDishonest);
  CHECK(otps_verify(st.bob, sig) == Verdict::Rej);
}

TEST_CASE("arbitration rule (b): s_v n flips on X^C are the boundary") {
  Setup st(100, 0.2, 22);
  auto sig = otps_sign(st.keys, 0);
  // Flip bits Charlie kept (not forwarded to Bob) so Bob still accepts.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < 100; ++i)
    if (!std::binary_search(st.charlie.sent[0].begin(), st.charlie.sent[0].end(), i))
      kept.push_back(i);
  for (std::size_t k = 0; k < 19; ++k) sig.xc[kept[k]] ^= 1;
  CHECK(otps_verify(st.bob, sig) == Verdict::Acc);
  CHECK(otps_arbitrate(st.charlie, sig, 0.2) == Arbitration::AliceDishonest);
  sig.xc[kept[19]] ^= 1;
  CHECK(otps_arbitrate(st.charlie, sig, 0.2) == Arbitration::BobDishonest);
}

TEST_CASE("thresholded checks tolerate a few errors") {
  Setup st(100, 0.2, 23);
  auto sig = otps_sign(st.keys, 1);
  sig.xb[3] ^= 1;
  CHECK(otps_verify(st.bob, sig) == Verdict::Rej);
  CHECK(thresholded_verify(st.bob, sig, 0.05) == Verdict::Acc);
  CHECK(thresholded_arbitrate(st.charlie, sig, 0.1) == Arbitration::AliceDishonest);
}
