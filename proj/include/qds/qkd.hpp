#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qds/bits.hpp"
#include "qds/channels.hpp"

namespace qds {

class Rng;

enum class QkdMode : std::uint8_t { Full, TestOnly };

std::string_view qkd_mode_name(QkdMode m) noexcept;
/// "full" or "test-only".
QkdMode qkd_mode_from_name(std::string_view name);

struct QkdConfig {
  std::size_t n_sent = 10000;
  QkdMode mode = QkdMode::Full;
  double test_fraction = 0.2;
  /// Confidence for the reported QBER upper bound (qber + delta).
  double eps_delta = 0.5;
  double eps_pa = 0x1.0p-32;
  /// Abort iff the TEST estimate exceeds this.
  double abort_threshold = 0.11;
  double f_ec = 1.2;
  Party sender = Party::Alice;
  Party receiver = Party::Bob;

  void validate() const;
};

/// Keys after sifting and TEST removal, plus the TEST statistics.
struct SiftedKeys {
  BitString sender;
  BitString receiver;
  std::size_t n_sent = 0;
  std::size_t sifted = 0;
  std::size_t tested = 0;
  std::size_t test_errors = 0;
  double qber = 0.0;
  double qber_upper = 0.0;
};

struct QkdResult {
  QkdMode mode = QkdMode::Full;
  BitString key_sender;
  BitString key_receiver;
  std::size_t n_sent = 0;
  std::size_t sifted = 0;
  std::size_t tested = 0;
  double qber = 0.0;
  std::size_t leaked = 0;
  std::size_t final_length = 0;
  bool aborted = false;

  /// {mode, n_sent, sifted, qber, leaked, final_length, aborted}
  nlohmann::ordered_json summary() const;
};

/// Binary entropy in bits; h2(0) = h2(1) = 0.
double h2(double p);

/// ceil(f_ec * len * h2(qber)).
std::size_t ec_leakage(std::size_t len, double qber, double f_ec = 1.2);

/// ceil(2 log2(1/eps_pa)).
std::size_t pa_security_bits(double eps_pa);

/// key_len - leaked - ceil(2 log2(1/eps_pa)); throws KeyTooShort if that is not positive.
std::size_t pa_output_length(std::size_t key_len, std::size_t leaked, double eps_pa);

/// Prepare, measure, sift, TEST. The sender prepares n_sent uniform
/// characters; the receiver measures in uniform bases; bases are exchanged
/// over `log`; a test_fraction subset of the sifted positions is revealed
/// and discarded. Throws QkdAbort when the estimate exceeds the threshold and
/// InsufficientSample when nothing was tested.
SiftedKeys qkd_exchange(const QkdConfig& cfg, QandyChannel& ch, Rng& sender, Rng& receiver,
                        AuthChannel& log);

/// Referee-assisted correction: the receiver's key becomes the sender's.
/// Returns the leakage charged for it.
std::size_t qkd_ec(SiftedKeys& keys, double f_ec = 1.2);

/// Seeded binary Toeplitz hash x -> T x with T of size out_len x |x|,
/// T[j][i] = seed[j - i + |x| - 1]. seed must hold |x| + out_len - 1 bits.
BitString toeplitz_hash(const BitString& x, const BitString& seed, std::size_t out_len);

/// Hashes both (identical) keys down to pa_output_length(). The Toeplitz
/// seed is drawn by `rng` and published on `log`.
std::size_t qkd_pa(SiftedKeys& keys, std::size_t leaked, double eps_pa, Rng& rng,
                   AuthChannel& log);

/// Full session; aborts are reported in the result rather than thrown.
QkdResult qkd_session(const QkdConfig& cfg, QandyChannel& ch, Rng& sender, Rng& receiver,
                      AuthChannel& log);

/// Smallest-ish n_sent expected to leave `target` final bits at design noise p.
std::size_t qkd_auto_n_sent(std::size_t target, QkdMode mode, double p_channel,
                            double test_fraction, double eps_pa);

}  // namespace qds
