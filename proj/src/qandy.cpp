#include "qds/qandy.hpp"

#include <atomic>

#include "qds/errors.hpp"
#include "qds/rng.hpp"

namespace qds {

namespace {
std::atomic<std::uint64_t> g_next_uid{1};
thread_local std::uint64_t t_peeks = 0;

std::uint64_t fresh_uid() { return g_next_uid.fetch_add(1, std::memory_order_relaxed); }
}  // namespace

char to_letter(QandyChar c) noexcept {
  switch (c) {
    case QandyChar::R: return 'R';
    case QandyChar::G: return 'G';
    case QandyChar::C: return 'C';
    case QandyChar::V: return 'V';
  }
  return '?';
}

std::optional<QandyChar> char_from_letter(char letter) noexcept {
  switch (letter) {
    case 'R': return QandyChar::R;
    case 'G': return QandyChar::G;
    case 'C': return QandyChar::C;
    case 'V': return QandyChar::V;
    default: return std::nullopt;
  }
}

QandyChar random_char(Rng& rng) { return static_cast<QandyChar>(rng.below(4)); }

Qandy::Qandy(Qandy&& other) noexcept
    : hidden_(other.hidden_), uid_(other.uid_), consumed_(other.consumed_) {
  other.consumed_ = true;
}

Qandy& Qandy::operator=(Qandy&& other) noexcept {
  if (this != &other) {
    hidden_ = other.hidden_;
    uid_ = other.uid_;
    consumed_ = other.consumed_;
    other.consumed_ = true;
  }
  return *this;
}

Qandy prepare(QandyChar c) { return Qandy(c, fresh_uid()); }

Bit measure(Qandy& q, Basis b, Rng& rng) {
  if (q.consumed_) throw AlreadyConsumed();
  q.consumed_ = true;
  if (basis_of(q.hidden_) == b) return value_of(q.hidden_);
  return rng.coin() ? 1 : 0;
}

QandyChar Referee::peek(const Qandy& q) {
  if (q.consumed_) throw AlreadyConsumed();
  ++t_peeks;
  return q.hidden_;
}

Qandy Referee::transport(Qandy&& q, bool flip) {
  if (q.consumed_) throw AlreadyConsumed();
  q.consumed_ = true;
  return Qandy(flip ? flip_value(q.hidden_) : q.hidden_, fresh_uid());
}

std::uint64_t Referee::peek_count() noexcept { return t_peeks; }

}  // namespace qds
