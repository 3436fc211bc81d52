#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qds/bits.hpp"
#include "qds/qandy.hpp"
#include "qds/rng.hpp"

namespace qds {

enum class Party : std::uint8_t { Alice, Bob, Charlie };

std::string_view party_name(Party p) noexcept;

/// Noisy one-way qandy link. Each transmitted qandy independently has its
/// value flipped inside its basis with probability p (R<->G, C<->V).
class QandyChannel {
 public:
  QandyChannel(double p_flip, Rng rng);

  /// Consumes `q`, returns the handle delivered at the far end.
  Qandy send(Qandy&& q);

  double p_flip() const noexcept { return p_; }
  std::size_t sent() const noexcept { return sent_; }

 private:
  double p_;
  Rng rng_;
  std::size_t sent_ = 0;
};

struct Message {
  std::uint64_t trial = 0;
  std::string step;
  Party from = Party::Alice;
  Party to = Party::Alice;
  std::string kind;
  std::vector<std::uint8_t> payload;
};

/// Append-only log of classical traffic for one trial.
class Transcript {
 public:
  explicit Transcript(std::uint64_t trial = 0) : trial_(trial) {}

  const Message& append(Message m);

  const std::vector<Message>& messages() const noexcept { return messages_; }
  std::vector<Message> by_step(std::string_view step) const;
  std::uint64_t trial() const noexcept { return trial_; }

  /// One JSON object per line: {trial, step, from, to, kind, payload_hex}.
  void write_jsonl(std::ostream& os) const;

 private:
  std::uint64_t trial_;
  std::vector<Message> messages_;
};

/// Authenticated classical link from one party to another. Delivery is
/// perfect; only the tag cost is accounted.
class AuthChannel {
 public:
  static constexpr unsigned kDefaultTagBits = 64;

  AuthChannel(Party from, Party to, Transcript& log, unsigned tag_bits = kDefaultTagBits);

  /// Logs and returns the delivered message (identical to what was sent).
  const Message& send(std::string step, std::string kind, std::vector<std::uint8_t> payload);
  const Message& send_text(std::string step, std::string kind, std::string_view text);

  std::uint64_t auth_bits() const noexcept { return auth_bits_; }
  std::size_t messages_sent() const noexcept { return sent_; }
  unsigned tag_bits() const noexcept { return tag_bits_; }
  Party from() const noexcept { return from_; }
  Party to() const noexcept { return to_; }

 private:
  Party from_;
  Party to_;
  Transcript* log_;
  unsigned tag_bits_;
  std::uint64_t auth_bits_ = 0;
  std::size_t sent_ = 0;
};

/// Shared one-time pad between a pair of parties. The cursor only moves
/// forward; no bit is handed out twice.
class PadStore {
 public:
  explicit PadStore(BitString pad) : pad_(std::move(pad)) {}

  /// Next k unused bits. Throws PadExhausted.
  BitString take(std::size_t k);

  std::size_t size() const noexcept { return pad_.size(); }
  std::size_t cursor() const noexcept { return cursor_; }
  std::size_t remaining() const noexcept { return pad_.size() - cursor_; }

 private:
  BitString pad_;
  std::size_t cursor_ = 0;
};

/// Encrypts `msg` with the next pad segment, logs the ciphertext on `ch`, and
/// returns what the receiver decrypts.
BitString otp_send(PadStore& pads, AuthChannel& ch, std::string step, std::span<const Bit> msg);

}  // namespace qds
