#include <doctest.h>

#include "qds/errors.hpp"
#include "qds/p2_awka.hpp"

using namespace qds;

namespace {

P2AwkaParams base(std::size_t n, double p) {
  P2AwkaParams pp;
  pp.n = n;
  pp.p_channel = p;
  return pp;
}

const Strategy kHonest{};
const Strategy kForger{Role::ForgerBob, std::nullopt, FlipKind::Value};
const Strategy kRepud{Role::RepudiatorAlice, std::nullopt, FlipKind::Value};

}  // namespace

TEST_CASE("P2 honest run at p=0.03 accepts with correct keys") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = p2_run(base(128, 0.03), kHonest, s);
    REQUIRE_FALSE(r.aborted);
    CHECK(r.keys_correct);
    CHECK(r.bob == Verdict::Acc);
    CHECK(r.charlie == Arbitration::AliceDishonest);
    CHECK(r.outcome == Outcome::HonestAcc);
    for (const auto& q : r.qkd) CHECK(q.key_sender == q.key_receiver);
  }
}

TEST_CASE("P2 forger is rejected") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = p2_run(base(128, 0.0), kForger, s);
    CHECK(r.charlie == Arbitration::BobDishonest);
    CHECK(r.outcome == Outcome::ForgeFail);
    CHECK_FALSE(r.bob.has_value());
  }
}

TEST_CASE("QKD abort stops the signature phase") {
  auto pp = base(64, 0.2);
  const auto r = p2_run(pp, kHonest, 1);
  CHECK(r.aborted);
  CHECK(r.abort_reason == "qkd abort");
  CHECK_FALSE(r.bob.has_value());
  CHECK_FALSE(r.charlie.has_value());
  CHECK(r.outcome == Outcome::HonestAbort);
}

TEST_CASE("undersized QKD is reported as key too short") {
  auto pp = base(64, 0.0);
  pp.qkd.n_sent = 400;
  const auto r = p2_run(pp, kHonest, 2);
  CHECK(r.aborted);
  CHECK(r.abort_reason == "key too short");
}

TEST_CASE("AWKA at p=0 behaves like P2") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = awka_run(base(128, 0.0), kHonest, s);
    REQUIRE_FALSE(r.aborted);
    CHECK(r.bob_view.own.mismatches == 0);
    CHECK(r.bob_view.received.mismatches == 0);
    CHECK(r.charlie_view.own.mismatches == 0);
    CHECK(r.outcome == Outcome::HonestAcc);
  }
}

TEST_CASE("AWKA honest acceptance grows with n at p=0.02") {
  int small = 0, large = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    small += awka_run(base(32, 0.02), kHonest, s).outcome == Outcome::HonestAcc;
    large += awka_run(base(512, 0.02), kHonest, s).outcome == Outcome::HonestAcc;
  }
  CHECK(large >= small);
  CHECK(large >= 58);
}

TEST_CASE("AWKA consumes fewer qandies per signature bit than P2") {
  const auto p2 = p2_run(base(256, 0.02), kHonest, 5);
  const auto aw = awka_run(base(256, 0.02), kHonest, 5);
  CHECK(aw.qandies_per_signature_bit() < p2.qandies_per_signature_bit());
}

TEST_CASE("repudiation budgets") {
  auto pp = base(100, 0.0);
  pp.s_v = 0.2;
  CHECK(default_p2_budget(pp) == 20);
  pp.variant = Variant::Awka;
  pp.s_a = 0.06;
  pp.s_v = 0.10;
  pp.p_channel = 0.02;
  CHECK(default_p2_budget(pp) == 6);
}

TEST_CASE("P2 repudiation almost never beats the zero-tolerance check") {
  int succ = 0;
  for (std::uint64_t s = 0; s < 40; ++s) succ += p2_run(base(64, 0.0), kRepud, s).outcome == Outcome::RepudSucc;
  CHECK(succ == 0);
}

TEST_CASE("parameter checks") {
  auto pp = base(64, 0.0);
  pp.s_v = 0.25;
  CHECK_THROWS_AS(p2_run(pp, kHonest, 0), InvalidParameter);
  pp = base(64, 0.0);
  pp.s_a = 0.2;
  pp.s_v = 0.1;
  CHECK_NOTHROW(p2_run(pp, kHonest, 0));  // P2 ignores s_a
  CHECK_THROWS_AS(awka_run(pp, kHonest, 0), InvalidParameter);
  CHECK_THROWS_AS(p2_run(base(64, 0.0), Strategy{Role::SplitKeyAlice, std::nullopt, FlipKind::Value}, 0),
                  InvalidParameter);
}

TEST_CASE("result JSON carries QKD summaries") {
  const auto r = p2_run(base(64, 0.01), kHonest, 3);
  const auto j = r.to_json();
  CHECK(j["protocol"] == "p2");
  CHECK(j["qkd"].size() == 3);
  CHECK(j["qkd"][0].contains("final_length"));
  CHECK(j["outcome"] == "honest_acc");
}
