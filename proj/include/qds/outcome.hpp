#pragma once

#include <optional>
#include <string_view>

#include "qds/adversaries.hpp"
#include "qds/lamport.hpp"

namespace qds {

/// Mutually exclusive classification of one trial.
enum class Outcome : std::uint8_t {
  HonestAcc,
  HonestAbort,
  ForgeSucc,
  ForgeFail,
  RepudSucc,
  RepudFail,
};

inline constexpr std::size_t kOutcomeCount = 6;

std::string_view outcome_name(Outcome o) noexcept;

/// Honest: any abort or a rejecting Bob is an honest abort.
/// Forger: success iff nothing aborted and the arbiter sides with Bob.
/// Alice strategies: success iff nothing aborted, Bob accepts and the arbiter
/// rejects Bob's claim.
Outcome classify(Role role, bool aborted, std::optional<Verdict> bob,
                 std::optional<Arbitration> arbiter);

}  // namespace qds
