#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qds/adversaries.hpp"
#include "qds/otps.hpp"
#include "qds/outcome.hpp"
#include "qds/p1.hpp"
#include "qds/p2_awka.hpp"
#include "qds/stats.hpp"

namespace qds {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Protocol : std::uint8_t { Lamport, Otps, P1, P2, Awka };

std::string_view protocol_name(Protocol p) noexcept;
Protocol protocol_from_name(std::string_view name);

struct ExperimentPlan {
  Protocol protocol = Protocol::P1;
  Strategy strategy;
  std::vector<std::size_t> n_grid{64, 128, 256, 512};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  /// The n field of each parameter block is overwritten per grid point.
  P1Params p1;
  OtpsParams otps;
  P2AwkaParams p2;
  std::string owf = "sha256";
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws InvalidParameter: trials >= 1, grid non-empty and strictly
  /// increasing, protocol parameters valid at every grid point.
  void validate() const;
};

nlohmann::ordered_json plan_to_json(const ExperimentPlan& plan);
/// Missing keys keep the defaults of `base`.
ExperimentPlan plan_from_json(const nlohmann::json& j, ExperimentPlan base = {});

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// fnv1a_hex of the canonical plan JSON.
std::string config_hash(const ExperimentPlan& plan);

/// Header line shared by every output: {version, seed, config_hash, rng}.
nlohmann::ordered_json output_meta(const ExperimentPlan& plan);

struct P1TrialResult {
  Outcome outcome = Outcome::HonestAbort;
  bool aborted = false;
  bool insufficient_sample = false;
  /// A-B and A-C TESTs for b = 0, then b = 1.
  std::vector<TestReport> tests;
  std::optional<Verdict> bob;
  std::optional<Arbitration> charlie;
  MismatchCount bob_count;
  MismatchCount charlie_count;
  /// Arbiter's view of the signature before TEST exclusion.
  MismatchCount charlie_raw;
  std::size_t budget = 0;
};

/// One P1 run: keygen, distribution, symmetrization, four TESTs, signing,
/// verification and arbitration, with the strategy's party deviating.
P1TrialResult run_p1_trial(const P1Params& params, const Strategy& strategy, std::uint64_t seed,
                           Transcript* log = nullptr);

/// Classic Lamport and OTP-S trials (pads drawn from the trial seed).
Outcome run_lamport_trial(std::size_t n, const std::string& owf, const Strategy& strategy,
                          std::uint64_t seed, nlohmann::ordered_json* detail = nullptr);
Outcome run_otps_trial(const OtpsParams& params, const Strategy& strategy, std::uint64_t seed,
                       nlohmann::ordered_json* detail = nullptr);

struct TrialRecord {
  std::size_t n = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::HonestAbort;
  nlohmann::ordered_json json;
};

/// Runs trial `index` of grid point `n` with seed base_seed ^ global index.
TrialRecord run_trial(const ExperimentPlan& plan, std::size_t n, std::uint64_t global_index);

struct PointSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::array<std::size_t, kOutcomeCount> counts{};

  std::size_t count(Outcome o) const { return counts[static_cast<std::size_t>(o)]; }
  double freq(Outcome o) const;
};

struct ExperimentResult {
  nlohmann::ordered_json meta;
  std::vector<PointSummary> points;

  std::vector<DecayPoint> decay_points(Outcome event) const;
};

/// Runs every trial of the plan on a worker pool. If `jsonl` is given, writes
/// the meta header and one record per trial in index order, so the bytes do
/// not depend on thread scheduling.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream* jsonl = nullptr);

/// CSV with '#' metadata lines and columns n,event,freq,wilson_lo,wilson_hi.
void write_sweep_csv(const ExperimentResult& result, std::ostream& os);

/// Parses a sweep CSV back into decay points for `event`.
std::vector<DecayPoint> read_sweep_csv(std::istream& is, std::string_view event);

/// Threshold gap that governs each event class: forgery p_f - s_v,
/// repudiation s_v - s_a, honest abort s_a - p_e.
double event_gap(const ExperimentPlan& plan, Outcome event);

}  // namespace qds
