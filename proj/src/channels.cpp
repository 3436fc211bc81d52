#include "qds/channels.hpp"

#include <ostream>

#include <json.hpp>

#include "qds/errors.hpp"

namespace qds {

std::string_view party_name(Party p) noexcept {
  switch (p) {
    case Party::Alice: return "alice";
    case Party::Bob: return "bob";
    case Party::Charlie: return "charlie";
  }
  return "?";
}

QandyChannel::QandyChannel(double p_flip, Rng rng) : p_(p_flip), rng_(std::move(rng)) {
  if (!(p_flip >= 0.0 && p_flip < 0.5))
    throw InvalidParameter("qandy channel flip probability must lie in [0, 0.5)");
}

Qandy QandyChannel::send(Qandy&& q) {
  if (!q.live()) throw AlreadyConsumed();
  ++sent_;
  return Referee::transport(std::move(q), rng_.bernoulli(p_));
}

const Message& Transcript::append(Message m) {
  m.trial = trial_;
  messages_.push_back(std::move(m));
  return messages_.back();
}

std::vector<Message> Transcript::by_step(std::string_view step) const {
  std::vector<Message> out;
  for (const auto& m : messages_)
    if (m.step == step) out.push_back(m);
  return out;
}

void Transcript::write_jsonl(std::ostream& os) const {
  for (const auto& m : messages_) {
    nlohmann::ordered_json j;
    j["trial"] = m.trial;
    j["step"] = m.step;
    j["from"] = party_name(m.from);
    j["to"] = party_name(m.to);
    j["kind"] = m.kind;
    j["payload_hex"] = to_hex(m.payload);
    os << j.dump() << '\n';
  }
}

AuthChannel::AuthChannel(Party from, Party to, Transcript& log, unsigned tag_bits)
    : from_(from), to_(to), log_(&log), tag_bits_(tag_bits) {}

const Message& AuthChannel::send(std::string step, std::string kind,
                                 std::vector<std::uint8_t> payload) {
  auth_bits_ += tag_bits_;
  ++sent_;
  return log_->append(Message{0, std::move(step), from_, to_, std::move(kind), std::move(payload)});
}

const Message& AuthChannel::send_text(std::string step, std::string kind, std::string_view text) {
  return send(std::move(step), std::move(kind), std::vector<std::uint8_t>(text.begin(), text.end()));
}

BitString PadStore::take(std::size_t k) {
  if (k > remaining()) throw PadExhausted(k, remaining());
  BitString out(pad_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                pad_.begin() + static_cast<std::ptrdiff_t>(cursor_ + k));
  cursor_ += k;
  return out;
}

BitString otp_send(PadStore& pads, AuthChannel& ch, std::string step, std::span<const Bit> msg) {
  const BitString key = pads.take(msg.size());
  const BitString cipher = xor_bits(msg, key);
  const Message& delivered = ch.send(std::move(step), "otp", pack_bits(cipher));
  return xor_bits(unpack_bits(delivered.payload, msg.size()), key);
}

}  // namespace qds
