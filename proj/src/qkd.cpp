#include "qds/qkd.hpp"

#include <algorithm>
#include <cmath>

#include "qds/errors.hpp"
#include "qds/p1.hpp"
#include "qds/qandy.hpp"
#include "qds/rng.hpp"

namespace qds {

std::string_view qkd_mode_name(QkdMode m) noexcept {
  return m == QkdMode::Full ? "full" : "test-only";
}

QkdMode qkd_mode_from_name(std::string_view name) {
  if (name == "full" || name == "Full") return QkdMode::Full;
  if (name == "test-only" || name == "test_only" || name == "TestOnly") return QkdMode::TestOnly;
  throw InvalidParameter("unknown QKD mode '" + std::string(name) + "'");
}

void QkdConfig::validate() const {
  if (n_sent == 0) throw InvalidParameter("n_sent must be positive");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw InvalidParameter("test_fraction must lie in (0,1)");
  if (!(eps_delta > 0.0 && eps_delta < 1.0)) throw InvalidParameter("eps_delta must lie in (0,1)");
  if (!(eps_pa > 0.0 && eps_pa < 1.0)) throw InvalidParameter("eps_pa must lie in (0,1)");
  if (!(abort_threshold >= 0.0 && abort_threshold < 0.5))
    throw InvalidParameter("abort_threshold must lie in [0, 0.5)");
  if (f_ec < 1.0) throw InvalidParameter("f_ec must be at least 1");
  if (sender == receiver) throw InvalidParameter("sender and receiver must differ");
}

nlohmann::ordered_json QkdResult::summary() const {
  nlohmann::ordered_json j;
  j["mode"] = qkd_mode_name(mode);
  j["n_sent"] = n_sent;
  j["sifted"] = sifted;
  j["qber"] = qber;
  j["leaked"] = leaked;
  j["final_length"] = final_length;
  j["aborted"] = aborted;
  return j;
}

double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::size_t ec_leakage(std::size_t len, double qber, double f_ec) {
  const double raw = f_ec * static_cast<double>(len) * h2(qber);
  return static_cast<std::size_t>(std::ceil(raw));
}

std::size_t pa_security_bits(double eps_pa) {
  if (!(eps_pa > 0.0 && eps_pa < 1.0)) throw InvalidParameter("eps_pa must lie in (0,1)");
  // Exact powers of two land on integers; guard against log2 rounding just above them.
  const double raw = 2.0 * std::log2(1.0 / eps_pa);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

std::size_t pa_output_length(std::size_t key_len, std::size_t leaked, double eps_pa) {
  const std::size_t sec = pa_security_bits(eps_pa);
  if (key_len <= leaked + sec)
    throw KeyTooShort("privacy amplification leaves no key: " + std::to_string(key_len) +
                      " bits, " + std::to_string(leaked) + " leaked, " + std::to_string(sec) +
                      " security bits");
  return key_len - leaked - sec;
}

namespace {

std::vector<std::uint8_t> pack_bases(const std::vector<Basis>& bases) {
  BitString bits(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) bits[i] = bases[i] == Basis::Taste ? 1 : 0;
  return pack_bits(bits);
}

std::vector<std::uint64_t> pack_words(const BitString& bits) {
  std::vector<std::uint64_t> w(bits.size() / 64 + 2, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) w[i >> 6] |= std::uint64_t{1} << (63 - (i & 63));
  return w;
}

}  // namespace

namespace {

SiftedKeys exchange_no_abort(const QkdConfig& cfg, QandyChannel& ch, Rng& sender, Rng& receiver,
                             AuthChannel& log) {
  cfg.validate();
  std::vector<Basis> sb(cfg.n_sent);
  std::vector<Basis> rb(cfg.n_sent);
  BitString sv(cfg.n_sent);
  BitString rv(cfg.n_sent);
  for (std::size_t i = 0; i < cfg.n_sent; ++i) {
    const QandyChar c = random_char(sender);
    sb[i] = basis_of(c);
    sv[i] = value_of(c);
    Qandy q = ch.send(prepare(c));
    rb[i] = receiver.coin() ? Basis::Taste : Basis::Color;
    rv[i] = measure(q, rb[i], receiver);
  }
  log.send("qkd-sift", "bases", pack_bases(rb));
  log.send("qkd-sift", "bases", pack_bases(sb));

  SiftedKeys out;
  out.n_sent = cfg.n_sent;
  for (std::size_t i = 0; i < cfg.n_sent; ++i) {
    if (sb[i] != rb[i]) continue;
    out.sender.push_back(sv[i]);
    out.receiver.push_back(rv[i]);
  }
  out.sifted = out.sender.size();

  const auto k = static_cast<std::size_t>(
      std::llround(cfg.test_fraction * static_cast<double>(out.sifted)));
  auto reveal = sender.sample_indices(out.sifted, std::min(k, out.sifted));
  out.tested = reveal.size();
  if (out.tested == 0) throw InsufficientSample();

  BitString revealed_bits;
  for (std::size_t i : reveal) {
    revealed_bits.push_back(out.sender[i]);
    if (out.sender[i] != out.receiver[i]) ++out.test_errors;
  }
  log.send("qkd-test", "reveal", pack_bits(revealed_bits));
  out.qber = static_cast<double>(out.test_errors) / static_cast<double>(out.tested);
  out.qber_upper = out.qber + hoeffding_delta(cfg.eps_delta, out.tested);

  BitString ks;
  BitString kr;
  ks.reserve(out.sifted - out.tested);
  kr.reserve(out.sifted - out.tested);
  std::size_t r = 0;
  for (std::size_t i = 0; i < out.sifted; ++i) {
    if (r < reveal.size() && reveal[r] == i) {
      ++r;
      continue;
    }
    ks.push_back(out.sender[i]);
    kr.push_back(out.receiver[i]);
  }
  out.sender = std::move(ks);
  out.receiver = std::move(kr);
  return out;
}

}  // namespace

SiftedKeys qkd_exchange(const QkdConfig& cfg, QandyChannel& ch, Rng& sender, Rng& receiver,
                        AuthChannel& log) {
  SiftedKeys out = exchange_no_abort(cfg, ch, sender, receiver, log);
  if (out.qber > cfg.abort_threshold) throw QkdAbort(out.qber);
  return out;
}

std::size_t qkd_ec(SiftedKeys& keys, double f_ec) {
  const std::size_t leaked = ec_leakage(keys.sender.size(), keys.qber, f_ec);
  keys.receiver = keys.sender;
  return leaked;
}

BitString toeplitz_hash(const BitString& x, const BitString& seed, std::size_t out_len) {
  const std::size_t m = x.size();
  if (m == 0 || out_len == 0) return BitString(out_len, 0);
  if (seed.size() < m + out_len - 1)
    throw InvalidParameter("Toeplitz seed too short: need " + std::to_string(m + out_len - 1) +
                           " bits");
  // y_j = sum_i seed[j + m - 1 - i] x_i = sum_k seed[j + k] r_k with r = reversed x,
  // so each output bit is the parity of a sliding seed window AND r.
  BitString rev(x.rbegin(), x.rend());
  const auto r = pack_words(rev);
  const auto s = pack_words(seed);
  const std::size_t words = (m + 63) / 64;
  const std::uint64_t tail_mask =
      (m % 64 == 0) ? ~std::uint64_t{0} : ~std::uint64_t{0} << (64 - (m % 64));

  BitString y(out_len, 0);
  for (std::size_t j = 0; j < out_len; ++j) {
    const std::size_t base = j >> 6;
    const unsigned shift = static_cast<unsigned>(j & 63);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t win = s[base + w] << shift;
      if (shift != 0) win |= s[base + w + 1] >> (64 - shift);
      if (w + 1 == words) win &= tail_mask;
      acc ^= win & r[w];
    }
    y[j] = static_cast<Bit>(__builtin_parityll(acc));
  }
  return y;
}

std::size_t qkd_pa(SiftedKeys& keys, std::size_t leaked, double eps_pa, Rng& rng,
                   AuthChannel& log) {
  const std::size_t out_len = pa_output_length(keys.sender.size(), leaked, eps_pa);
  const BitString seed = random_bits(rng, keys.sender.size() + out_len - 1);
  log.send("qkd-pa", "toeplitz-seed", pack_bits(seed));
  keys.sender = toeplitz_hash(keys.sender, seed, out_len);
  keys.receiver = toeplitz_hash(keys.receiver, seed, out_len);
  return out_len;
}

QkdResult qkd_session(const QkdConfig& cfg, QandyChannel& ch, Rng& sender, Rng& receiver,
                      AuthChannel& log) {
  QkdResult res;
  res.mode = cfg.mode;
  res.n_sent = cfg.n_sent;
  SiftedKeys keys = exchange_no_abort(cfg, ch, sender, receiver, log);
  res.sifted = keys.sifted;
  res.tested = keys.tested;
  res.qber = keys.qber;
  if (keys.qber > cfg.abort_threshold) {
    res.aborted = true;
    return res;
  }
  if (cfg.mode == QkdMode::Full) {
    res.leaked = qkd_ec(keys, cfg.f_ec);
    qkd_pa(keys, res.leaked, cfg.eps_pa, sender, log);
  }
  res.key_sender = std::move(keys.sender);
  res.key_receiver = std::move(keys.receiver);
  res.final_length = res.key_sender.size();
  return res;
}

std::size_t qkd_auto_n_sent(std::size_t target, QkdMode mode, double p_channel,
                            double test_fraction, double eps_pa) {
  const double keep = 0.5 * (1.0 - test_fraction);
  double need = static_cast<double>(target);
  double rate = keep;
  if (mode == QkdMode::Full) {
    const double q = std::min(p_channel + 0.02, 0.11);
    need += static_cast<double>(pa_security_bits(eps_pa));
    rate *= 1.0 - 1.2 * h2(q);
  }
  return static_cast<std::size_t>(std::ceil(1.1 * need / rate)) + 64;
}

}  // namespace qds
