#include <doctest.h>

#include <cmath>

#include "qds/errors.hpp"
#include "qds/qkd.hpp"
#include "qds/rng.hpp"
#include "qds/stats.hpp"

using namespace qds;

namespace {

struct Session {
  Transcript log;
  AuthChannel auth{Party::Alice, Party::Bob, log};
  QandyChannel ch;
  Rng s;
  Rng r;
  Session(double p, std::uint64_t seed) : ch(p, Rng(seed, 1)), s(seed, 2), r(seed, 3) {}
};

BitString naive_toeplitz(const BitString& x, const BitString& seed, std::size_t out) {
  const std::size_t m = x.size();
  BitString y(out, 0);
  for (std::size_t j = 0; j < out; ++j) {
    Bit acc = 0;
    for (std::size_t i = 0; i < m; ++i) acc ^= seed[j + m - 1 - i] & x[i];
    y[j] = acc;
  }
  return y;
}

}  // namespace

TEST_CASE("binary entropy and EC leakage") {
  // Reference values from Python's math.log2.
  CHECK(h2(0.05) == doctest::Approx(0.28639695711595625).epsilon(1e-14));
  CHECK(h2(0.0) == 0.0);
  CHECK(h2(0.5) == doctest::Approx(1.0));
  CHECK(ec_leakage(5000, 0.05) == 1719);
  CHECK(ec_leakage(5000, 0.0) == 0);
}

TEST_CASE("PA output length") {
  CHECK(pa_security_bits(0x1.0p-32) == 64);
  CHECK(pa_output_length(4000 - 800, 600, 0x1.0p-32) == 2536);
  CHECK_THROWS_AS(pa_output_length(100, 40, 0x1.0p-32), KeyTooShort);
  CHECK_THROWS_AS(pa_output_length(104, 40, 0x1.0p-32), KeyTooShort);
  CHECK(pa_output_length(105, 40, 0x1.0p-32) == 1);
}

TEST_CASE("Toeplitz hash matches the textbook product") {
  Rng rng(1, 0);
  for (std::size_t m : {1u, 63u, 64u, 65u, 130u, 500u}) {
    for (std::size_t out : {1u, 7u, 64u, 129u}) {
      const BitString x = random_bits(rng, m);
      const BitString seed = random_bits(rng, m + out - 1);
      CAPTURE(m);
      CAPTURE(out);
      CHECK(toeplitz_hash(x, seed, out) == naive_toeplitz(x, seed, out));
    }
  }
  const BitString x = random_bits(rng, 100);
  CHECK_THROWS_AS(toeplitz_hash(x, BitString(50, 0), 10), InvalidParameter);
}

TEST_CASE("noiseless exchange: half sifted, QBER 0") {
  Session s(0.0, 2);
  QkdConfig cfg;
  cfg.n_sent = 10000;
  const auto k = qkd_exchange(cfg, s.ch, s.s, s.r, s.auth);
  CHECK(std::abs(k.sifted / 10000.0 - 0.5) < 3 * binomial_sigma(0.5, 10000));
  CHECK(k.qber == 0.0);
  CHECK(k.sender == k.receiver);
  CHECK(k.sender.size() == k.sifted - k.tested);
  CHECK(k.tested == static_cast<std::size_t>(std::llround(0.2 * k.sifted)));
}

TEST_CASE("QBER estimate tracks p_channel") {
  for (double p : {0.03, 0.08}) {
    double sum = 0;
    std::size_t tested = 0;
    for (int t = 0; t < 50; ++t) {
      Session s(p, 100 + t);
      QkdConfig cfg;
      cfg.n_sent = 4000;
      const auto k = qkd_exchange(cfg, s.ch, s.s, s.r, s.auth);
      sum += static_cast<double>(k.test_errors);
      tested += k.tested;
    }
    CAPTURE(p);
    CHECK(std::abs(sum / tested - p) < 3 * binomial_sigma(p, tested));
  }
}

TEST_CASE("high noise aborts") {
  Session s(0.3, 3);
  QkdConfig cfg;
  cfg.abort_threshold = 0.12;
  CHECK_THROWS_AS(qkd_exchange(cfg, s.ch, s.s, s.r, s.auth), QkdAbort);
  Session s2(0.3, 3);
  const auto res = qkd_session(cfg, s2.ch, s2.s, s2.r, s2.auth);
  CHECK(res.aborted);
  CHECK(res.key_sender.empty());
  CHECK(res.summary()["aborted"] == true);
}

TEST_CASE("tiny sessions have nothing to test") {
  Session s(0.0, 4);
  QkdConfig cfg;
  cfg.n_sent = 2;
  cfg.test_fraction = 0.1;
  CHECK_THROWS_AS(qkd_exchange(cfg, s.ch, s.s, s.r, s.auth), InsufficientSample);
}

TEST_CASE("full mode ends with identical keys of the predicted length") {
  for (int t = 0; t < 20; ++t) {
    Session s(0.05, 200 + t);
    QkdConfig cfg;
    cfg.n_sent = 8000;
    const auto res = qkd_session(cfg, s.ch, s.s, s.r, s.auth);
    REQUIRE_FALSE(res.aborted);
    CHECK(res.key_sender == res.key_receiver);
    const std::size_t key_len = res.sifted - res.tested;
    CHECK(res.leaked == ec_leakage(key_len, res.qber));
    CHECK(res.final_length == pa_output_length(key_len, res.leaked, cfg.eps_pa));
  }
}

TEST_CASE("EC with zero QBER leaks nothing") {
  SiftedKeys k;
  k.sender = {1, 0, 1};
  k.receiver = {1, 0, 1};
  k.qber = 0.0;
  CHECK(qkd_ec(k) == 0);
}

TEST_CASE("test-only keys disagree at the QBER rate") {
  std::size_t diff = 0, len = 0;
  const double p = 0.05;
  for (int t = 0; t < 20; ++t) {
    Session s(p, 300 + t);
    QkdConfig cfg;
    cfg.mode = QkdMode::TestOnly;
    cfg.n_sent = 8000;
    const auto res = qkd_session(cfg, s.ch, s.s, s.r, s.auth);
    REQUIRE_FALSE(res.aborted);
    CHECK(res.leaked == 0);
    CHECK(res.key_sender.size() == res.key_receiver.size());
    diff += hamming_distance(res.key_sender, res.key_receiver);
    len += res.key_sender.size();
  }
  CHECK(std::abs(diff / double(len) - p) < 3 * binomial_sigma(p, len));
}

TEST_CASE("auto sizing leaves the requested key") {
  for (double p : {0.0, 0.02, 0.05}) {
    const std::size_t target = 2000;
    QkdConfig cfg;
    cfg.n_sent = qkd_auto_n_sent(target, QkdMode::Full, p, cfg.test_fraction, cfg.eps_pa);
    Session s(p, 400);
    const auto res = qkd_session(cfg, s.ch, s.s, s.r, s.auth);
    CAPTURE(p);
    CHECK(res.final_length >= target);
  }
}

TEST_CASE("config validation and mode names") {
  QkdConfig cfg;
  cfg.test_fraction = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  cfg = QkdConfig{};
  cfg.sender = cfg.receiver;
  CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
  CHECK(qkd_mode_from_name("test-only") == QkdMode::TestOnly);
  CHECK(qkd_mode_name(QkdMode::Full) == "full");
}
