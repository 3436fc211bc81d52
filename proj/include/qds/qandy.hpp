#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qds/bits.hpp"

namespace qds {

class Rng;

/// The two complementary properties of a qandy: its color or its taste.
enum class Basis : std::uint8_t { Color = 0, Taste = 1 };

constexpr Basis conjugate(Basis b) noexcept {
  return b == Basis::Color ? Basis::Taste : Basis::Color;
}

constexpr std::string_view basis_name(Basis b) noexcept {
  return b == Basis::Color ? "color" : "taste";
}

/// Preparation characters: Red, Green (color), Chocolate, Vanilla (taste).
/// Value mapping is fixed: R=0, G=1, C=0, V=1.
enum class QandyChar : std::uint8_t { R = 0, G = 1, C = 2, V = 3 };

inline constexpr std::array<QandyChar, 4> kAllChars = {QandyChar::R, QandyChar::G,
                                                       QandyChar::C, QandyChar::V};

constexpr Basis basis_of(QandyChar c) noexcept {
  return (static_cast<std::uint8_t>(c) & 2u) ? Basis::Taste : Basis::Color;
}

constexpr Bit value_of(QandyChar c) noexcept {
  return static_cast<Bit>(static_cast<std::uint8_t>(c) & 1u);
}

constexpr QandyChar make_char(Basis b, Bit v) noexcept {
  return static_cast<QandyChar>((b == Basis::Taste ? 2u : 0u) | (v & 1u));
}

/// Same basis, opposite value (R<->G, C<->V).
constexpr QandyChar flip_value(QandyChar c) noexcept {
  return make_char(basis_of(c), static_cast<Bit>(value_of(c) ^ 1u));
}

char to_letter(QandyChar c) noexcept;
std::optional<QandyChar> char_from_letter(char letter) noexcept;

/// Uniform over the four characters.
QandyChar random_char(Rng& rng);

/// A single prepared qandy. Move-only; the hidden character can only be
/// learned through measure(), which consumes the handle. A moved-from handle
/// counts as consumed.
class Qandy {
 public:
  Qandy(const Qandy&) = delete;
  Qandy& operator=(const Qandy&) = delete;
  Qandy(Qandy&& other) noexcept;
  Qandy& operator=(Qandy&& other) noexcept;
  ~Qandy() = default;

  std::uint64_t uid() const noexcept { return uid_; }
  bool live() const noexcept { return !consumed_; }

 private:
  Qandy(QandyChar c, std::uint64_t uid) noexcept : hidden_(c), uid_(uid) {}

  friend Qandy prepare(QandyChar c);
  friend Bit measure(Qandy& q, Basis b, Rng& rng);
  friend class Referee;

  QandyChar hidden_;
  std::uint64_t uid_;
  bool consumed_ = false;
};

/// Fresh live qandy holding `c`.
Qandy prepare(QandyChar c);

/// Measures `q` in basis `b` and consumes it. Matching basis returns the
/// prepared value; the conjugate basis returns an unbiased coin from `rng`.
/// Throws AlreadyConsumed.
Bit measure(Qandy& q, Basis b, Rng& rng);

struct MeasurementRecord {
  std::size_t index = 0;
  Basis basis = Basis::Color;
  Bit outcome = 0;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// True iff the record was taken in the declared character's basis and saw
/// the other value.
constexpr bool mismatch(QandyChar declared, const MeasurementRecord& rec) noexcept {
  return basis_of(declared) == rec.basis && value_of(declared) != rec.outcome;
}

/// Trusted-simulator access to hidden state. Protocol parties and
/// adversaries never call peek(); every call is counted so tests can audit
/// that a strategy stayed within its role's view.
class Referee {
 public:
  static QandyChar peek(const Qandy& q);

  /// Consumes `q` and re-issues it under a new uid, optionally with the value
  /// flipped inside its basis. Models physical transport; reveals nothing.
  static Qandy transport(Qandy&& q, bool flip);

  /// Number of peek() calls made on the current thread.
  static std::uint64_t peek_count() noexcept;
};

}  // namespace qds
