#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qds/channels.hpp"
#include "qds/lamport.hpp"
#include "qds/qandy.hpp"

namespace qds {

class Rng;

/// Informative-record mismatch rate of the minimum-error forger on the
/// arbiter's retained copies.
inline constexpr double kMinErrorForgeryRate = 0.125;

/// Parameters of the qandy signature protocol.
///
/// Thresholds are fractions of *informative* records: records whose
/// measurement basis matches the basis of the declared character. Only those
/// records can contradict a declaration, and the TEST noise estimate uses
/// the same denominator, so p_e, s_a, s_v and p_f live on one scale.
struct P1Params {
  std::size_t n = 0;
  double s_a = 1.0 / 24.0;
  double s_v = 1.0 / 12.0;
  double eps_delta = 0.5;
  double p_channel = 0.0;
  double test_fraction = 0.2;
  /// Noise rate the thresholds were designed for; checked against s_a.
  double p_e_expected = 0.0;
  double p_f = kMinErrorForgeryRate;

  /// Enforces 0 <= p_e < s_a < s_v < p_f, even n, eps_delta in (0,1),
  /// test_fraction in (0,1) and p_channel in [0, 0.5).
  void validate() const;
};

/// Alice's two private character strings X_0, X_1 with one-time flags.
struct PrivateKey {
  std::array<std::vector<QandyChar>, 2> x;
  std::array<bool, 2> used{false, false};
};

/// Two qandy copies of each public key, still in Alice's hands.
struct P1KeyMaterial {
  PrivateKey key;
  std::array<std::vector<Qandy>, 2> for_bob;
  std::array<std::vector<Qandy>, 2> for_charlie;
};

enum class Provenance : std::uint8_t { Kept, Received };

struct HeldQandy {
  std::size_t index = 0;
  Qandy q;
  Provenance prov = Provenance::Kept;
};

struct HeldRecord {
  MeasurementRecord rec;
  Provenance prov = Provenance::Kept;
};

/// Everything one recipient holds for both public keys.
struct RecipientState {
  Party who = Party::Bob;
  std::array<std::vector<HeldQandy>, 2> qandies;
  std::array<std::vector<std::size_t>, 2> forwarded;   // sorted
  std::array<std::vector<HeldRecord>, 2> records;
  std::array<std::vector<std::size_t>, 2> excluded;    // TEST-revealed, sorted
};

struct TestReport {
  std::vector<std::size_t> revealed;
  std::size_t t = 0;            // matching-basis sample size
  std::size_t mismatches = 0;
  double rate = 0.0;
  double delta = 0.0;
  double threshold = 0.0;
  bool abort = false;
};

struct P1Signature {
  Bit b = 0;
  std::vector<QandyChar> chars;
};

/// Mismatches over a recipient's non-excluded records, split by provenance.
struct MismatchCount {
  std::size_t mismatches = 0;
  std::size_t informative = 0;
  std::size_t records = 0;
  std::array<std::size_t, 2> mismatches_by_prov{0, 0};
  std::array<std::size_t, 2> informative_by_prov{0, 0};
  std::array<std::size_t, 2> records_by_prov{0, 0};

  /// mismatches / informative (0 when nothing is informative).
  double informative_fraction() const noexcept;
  /// mismatches / n, the key-length normalization.
  double key_fraction(std::size_t n) const noexcept;
};

P1KeyMaterial p1_keygen(const P1Params& params, Rng& alice);

/// Builds the two qandy copies for an arbitrary pair of private strings.
P1KeyMaterial p1_material_from(PrivateKey bob_key, const PrivateKey& charlie_key);

/// Moves every qandy out of Alice's hands through the two channels.
std::pair<RecipientState, RecipientState> p1_distribute(P1KeyMaterial& material,
                                                        QandyChannel& to_bob,
                                                        QandyChannel& to_charlie);

/// Uniform n/2 subset of the recipient's indices for key b.
std::vector<std::size_t> p1_choose_forward(const RecipientState& r, Bit b, Rng& rng);

/// Pulls the handles at `indices` out of the recipient's holdings.
std::vector<HeldQandy> p1_take_handles(RecipientState& r, Bit b,
                                       const std::vector<std::size_t>& indices);

/// Delivers `handles` through `ch` into `dest` as received qandies.
void p1_deliver(std::vector<HeldQandy> handles, QandyChannel& ch, RecipientState& dest, Bit b);

/// Measures every live handle for key b in an independent uniform basis.
void p1_measure_all(RecipientState& r, Bit b, Rng& rng);

/// Honest symmetrization of both keys: choose, exchange, then measure all.
void p1_symmetrize(RecipientState& bob, RecipientState& charlie, QandyChannel& bob_to_charlie,
                   QandyChannel& charlie_to_bob, Rng& bob_rng, Rng& charlie_rng);

/// Reveal set for one TEST: round(test_fraction*n) indices, half drawn by
/// Alice over all indices, the rest by the recipient among indices it holds
/// records for.
std::vector<std::size_t> p1_choose_reveals(const P1Params& params, const RecipientState& r,
                                           Bit b, Rng& alice, Rng& recipient);

/// Compares Alice's disclosed characters with the recipient's records at the
/// revealed indices; conjugate-basis records are dropped from the statistic.
/// Aborts iff rate > max(s_a - delta, 0), delta = sqrt(ln(1/eps)/(2t)).
/// Throws InsufficientSample when t == 0.
TestReport p1_test(const P1Params& params, std::span<const QandyChar> disclosed_key,
                   const RecipientState& r, Bit b, std::vector<std::size_t> revealed);

double hoeffding_delta(double eps, std::size_t t);

/// Discloses X_b. Throws KeyAlreadyUsed if b was already signed.
P1Signature p1_sign(PrivateKey& key, Bit b);

MismatchCount p1_count(const RecipientState& r, const P1Signature& sig, bool apply_exclusion = true);

struct P1Check {
  Verdict verdict = Verdict::Rej;
  MismatchCount count;
};

struct P1Arbitration {
  Arbitration result = Arbitration::BobDishonest;
  MismatchCount count;
};

/// ACC iff Bob's informative mismatch fraction < s_a.
P1Check p1_verify(const RecipientState& bob, const P1Signature& sig, double s_a);

/// Charlie sides with Bob iff his informative mismatch fraction < s_v.
P1Arbitration p1_arbitrate(const RecipientState& charlie, const P1Signature& sig, double s_v);

/// Number of copies (records) of each index held by `r` for key b.
std::vector<int> p1_copy_counts(const RecipientState& r, Bit b, std::size_t n);

}  // namespace qds
