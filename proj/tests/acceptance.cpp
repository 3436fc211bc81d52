// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qds/errors.hpp"
#include "qds/harness.hpp"
#include "qds/lamport.hpp"
#include "qds/otps.hpp"
#include "qds/p1.hpp"
#include "qds/p2_awka.hpp"
#include "qds/qkd.hpp"
#include "qds/rng.hpp"
#include "qds/stats.hpp"

using namespace qds;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double kSigmas = 3.0;
constexpr double kChi2MinP = 0.01;
constexpr double kC1MaxSeconds = 5.0;
constexpr double kC4MaxSeconds = 30.0;
constexpr double kC5MaxSeconds = 600.0;
constexpr double kC7AbortFloor = 0.99;
constexpr double kC11AcceptFloor = 0.99;
constexpr std::uint64_t kSeed = 20240601;
const std::vector<std::size_t> kGrid = {64, 128, 256, 512};
constexpr std::size_t kGridTrials = 10000;

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& measured) {
  std::printf("criterion %2d: %s | %s | %s\n", id, pass ? "PASS" : "FAIL", what.c_str(),
              measured.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string freqs(const ExperimentResult& r, Outcome o) {
  std::ostringstream os;
  for (const auto& p : r.points) os << p.n << ":" << p.count(o) << "/" << p.trials << " ";
  return os.str();
}

std::string fit_text(const DecayFit& f) {
  std::ostringstream os;
  os << "slope=" << f.slope << " se=" << f.slope_se << " upper95=" << f.slope + kZ95OneSided * f.slope_se
     << " non_increasing=" << (f.non_increasing ? "yes" : "no") << " c=" << f.constant;
  return os.str();
}

double fixture_forger_rate() {
  std::ifstream in(std::string(QDS_FIXTURE_DIR) + "/forger_mismatch_table.json");
  if (!in) throw InsufficientData("missing forger fixture");
  return nlohmann::json::parse(in)["retained"]["mismatch_probability_float"].get<double>();
}

// --- 1 ---------------------------------------------------------------------
void criterion1() {
  const auto t0 = Clock::now();
  Rng rng(kSeed, 1);
  const int N = 10000;
  bool ok = true;
  double min_p = 1.0;
  for (QandyChar c : kAllChars) {
    for (Basis b : {Basis::Color, Basis::Taste}) {
      int ones = 0;
      for (int i = 0; i < N; ++i) {
        Qandy q = prepare(c);
        ones += measure(q, b, rng);
      }
      if (b == basis_of(c)) {
        ok = ok && ones == (value_of(c) ? N : 0);
      } else {
        const double d = ones - N / 2.0;
        const double pval = chi2_sf_df1(2.0 * d * d / (N / 2.0));
        min_p = std::min(min_p, pval);
        ok = ok && pval > kChi2MinP;
      }
    }
  }
  const double secs = seconds_since(t0);
  report(1, ok && secs < kC1MaxSeconds, "qandy semantics: matching deterministic, conjugate uniform",
         "min chi2 p=" + fmt("%.4f", min_p) + " runtime=" + fmt("%.2fs", secs));
}

// --- 2 ---------------------------------------------------------------------
void criterion2() {
  Rng rng(kSeed, 2);
  const int sequences = 10000;
  int caught_all = 0;
  bool single_outcome = true;
  for (int s = 0; s < sequences; ++s) {
    std::vector<Qandy> pool;
    for (int i = 0; i < 3; ++i) pool.push_back(prepare(random_char(rng)));
    std::map<std::uint64_t, int> outcomes;
    int attempts = 0, caught = 0;
    // Random uses, then one guaranteed re-use of a spent handle.
    for (int step = 0; step < 8; ++step) {
      const auto k = rng.below(pool.size());
      const bool live = pool[k].live();
      const auto uid = pool[k].uid();
      if (!live) ++attempts;
      try {
        if (rng.coin()) {
          measure(pool[k], rng.coin() ? Basis::Color : Basis::Taste, rng);
          ++outcomes[uid];
        } else {
          pool.push_back(Referee::transport(std::move(pool[k]), rng.coin()));
        }
      } catch (const AlreadyConsumed&) {
        ++caught;
      }
    }
    Qandy spent = prepare(QandyChar::R);
    measure(spent, Basis::Color, rng);
    ++attempts;
    try {
      measure(spent, Basis::Taste, rng);
      ++outcomes[spent.uid()];
    } catch (const AlreadyConsumed&) {
      ++caught;
    }
    for (const auto& [uid, n] : outcomes) single_outcome = single_outcome && n <= 1;
    caught_all += caught == attempts;
  }
  report(2, caught_all == sequences && single_outcome, "no-cloning: every re-use throws AlreadyConsumed",
         std::to_string(caught_all) + "/" + std::to_string(sequences) +
             " sequences fully caught, one outcome per uid=" + (single_outcome ? "yes" : "no"));
}

// --- 3 ---------------------------------------------------------------------
void criterion3() {
  Rng rng(kSeed, 3);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    LamportKeyPair kp = lamport_gen(128, rng);
    const Bit m = rng.coin();
    failures += lamport_ver(kp.vk(), m, kp.sign(m)) != Verdict::Acc;
  }
  report(3, failures == 0, "Lamport Ver(Sign) = ACC at n=128", std::to_string(failures) + " failures / 10000");
}

// --- 4 ---------------------------------------------------------------------
double criterion4() {
  const auto t0 = Clock::now();
  const double oracle = fixture_forger_rate();
  P1Params pp;
  pp.n = 256;
  std::size_t m = 0, rec = 0;
  std::uint64_t s = 0;
  while (rec < 100000) {
    const auto r = run_p1_trial(pp, {Role::ForgerBob, std::nullopt, FlipKind::Value}, kSeed ^ s++);
    m += r.charlie_raw.mismatches_by_prov[0];
    rec += r.charlie_raw.records_by_prov[0];
  }
  const double f = double(m) / double(rec);
  const double sig = binomial_sigma(oracle, rec);
  const double secs = seconds_since(t0);
  report(4, std::abs(f - oracle) <= kSigmas * sig && secs < kC4MaxSeconds,
         "min-error forgery rate on arbiter-retained indices vs enumeration",
         "oracle=" + fmt("%.6f", oracle) + " empirical=" + fmt("%.6f", f) + " z=" +
             fmt("%.2f", (f - oracle) / sig) + " indices=" + std::to_string(rec) + " runtime=" +
             fmt("%.1fs", secs));
  return oracle;
}

ExperimentPlan grid_plan(Role role, const P1Params& pp, std::uint64_t seed) {
  ExperimentPlan plan;
  plan.protocol = Protocol::P1;
  plan.strategy.role = role;
  plan.n_grid = kGrid;
  plan.trials = kGridTrials;
  plan.seed = seed;
  plan.p1 = pp;
  return plan;
}

// --- 5, 6 ------------------------------------------------------------------
void criteria5and6(double p_f) {
  const Thresholds t = optimize_thresholds(0.0, p_f);
  P1Params pp;
  pp.s_a = t.s_a;
  pp.s_v = t.s_v;
  pp.p_f = p_f;

  auto t0 = Clock::now();
  auto plan = grid_plan(Role::ForgerBob, pp, kSeed + 5);
  auto res = run_experiment(plan);
  auto fit = fit_decay(res.decay_points(Outcome::ForgeSucc), event_gap(plan, Outcome::ForgeSucc));
  double secs = seconds_since(t0);
  report(5, fit.non_increasing && fit.decaying && secs < kC5MaxSeconds,
         "forgery frequency non-increasing with negative log slope (95%)",
         freqs(res, Outcome::ForgeSucc) + fit_text(fit) + " runtime=" + fmt("%.1fs", secs));

  t0 = Clock::now();
  plan = grid_plan(Role::RepudiatorAlice, pp, kSeed + 6);
  res = run_experiment(plan);
  fit = fit_decay(res.decay_points(Outcome::RepudSucc), event_gap(plan, Outcome::RepudSucc));
  secs = seconds_since(t0);
  report(6, fit.non_increasing && fit.decaying,
         "repudiation frequency at budget floor(n(s_v-s_a)/2) decays",
         freqs(res, Outcome::RepudSucc) + fit_text(fit) + " runtime=" + fmt("%.1fs", secs));
}

// --- 7 ---------------------------------------------------------------------
void criterion7() {
  P1Params pp;
  pp.s_a = 0.10;
  pp.s_v = 0.115;
  pp.eps_delta = 0.8;
  pp.test_fraction = 0.5;
  pp.p_channel = 0.01;
  const bool premise = pp.p_channel / 2 < pp.s_a;
  auto plan = grid_plan(Role::Honest, pp, kSeed + 7);
  auto res = run_experiment(plan);
  const auto fit = fit_decay(res.decay_points(Outcome::HonestAbort), event_gap(plan, Outcome::HonestAbort));

  // Noisy half: estimated noise above s_a.
  P1Params noisy = pp;
  noisy.p_channel = 0.15;
  auto nplan = grid_plan(Role::Honest, noisy, kSeed + 70);
  nplan.trials = 2000;
  auto nres = run_experiment(nplan);
  double est = 0;
  int runs = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    noisy.n = 512;
    const auto r = run_p1_trial(noisy, {}, kSeed ^ (1000 + s));
    for (const auto& t : r.tests) {
      est += t.rate;
      ++runs;
    }
  }
  est /= runs;
  const double at512 = nres.points.back().freq(Outcome::HonestAbort);
  report(7, premise && fit.non_increasing && fit.decaying && est > noisy.s_a && at512 >= kC7AbortFloor,
         "honest abort decays when p/2 < s_a; goes to 1 when noise > s_a",
         "p=0.01: " + freqs(res, Outcome::HonestAbort) + fit_text(fit) + " | p=0.15: mean TEST rate=" +
             fmt("%.3f", est) + " abort@512=" + fmt("%.4f", at512));
}

// --- 8 ---------------------------------------------------------------------
void criterion8() {
  const std::size_t n = 100;
  const int trials = 10000;
  std::array<std::size_t, 3> counts{};
  P1Params pp;
  pp.n = n;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = kSeed ^ (0x8000 + t);
    Rng alice(seed, streams::kAlice), b(seed, streams::kBob), c(seed, streams::kCharlie);
    QandyChannel ab(0, Rng(seed, 11)), ac(0, Rng(seed, 12)), bc(0, Rng(seed, 13)), cb(0, Rng(seed, 14));
    auto m = p1_keygen(pp, alice);
    auto [bob, charlie] = p1_distribute(m, ab, ac);
    p1_symmetrize(bob, charlie, bc, cb, b, c);
    for (int k : p1_copy_counts(bob, 0, n)) ++counts[k];
  }
  const std::size_t N = n * trials;
  const std::array<double, 3> expect{0.25, 0.5, 0.25};
  bool ok = true;
  std::ostringstream os;
  for (int k = 0; k < 3; ++k) {
    const double f = double(counts[k]) / double(N);
    const double z = (f - expect[k]) / binomial_sigma(expect[k], N);
    ok = ok && std::abs(z) <= kSigmas;
    os << k << ":" << fmt("%.5f", f) << "(z=" << fmt("%.2f", z) << ") ";
  }
  report(8, ok, "copy-count distribution (1/4, 1/2, 1/4) at n=100", os.str());
}

// --- 9 ---------------------------------------------------------------------
void criterion9() {
  const OtpsParams op{128, 0.2};
  int acc = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) acc += run_otps_trial(op, {}, kSeed ^ t) == Outcome::HonestAcc;

  std::size_t mism = 0, total = 0;
  for (int t = 0; t < 1000; ++t) {
    nlohmann::ordered_json d;
    run_otps_trial(op, {Role::ForgerBob, std::nullopt, FlipKind::Value}, kSeed ^ (0x9000 + t), &d);
    mism += d["mismatch_counts"]["charlie"]["own"].get<std::size_t>();
    total += op.n;
  }
  const double f = double(mism) / double(total);
  const double z = (f - 0.25) / binomial_sigma(0.25, total);

  bool rejects = true;
  for (double sv : {0.25, 0.3, 0.5}) {
    try {
      OtpsParams{64, sv}.validate();
      rejects = false;
    } catch (const InvalidParameter&) {
    }
  }
  bool accepts = true;
  try {
    OtpsParams{64, 0.2499}.validate();
  } catch (const InvalidParameter&) {
    accepts = false;
  }
  report(9, acc == trials && std::abs(z) <= kSigmas && rejects && accepts,
         "OTP-S: honest accept 1.0, guessed forgery at 1/4, s_v >= 1/4 rejected",
         "accept=" + std::to_string(acc) + "/" + std::to_string(trials) + " forgery fraction=" + fmt("%.4f", f) +
             " z=" + fmt("%.2f", z) + " validation=" + (rejects && accepts ? "ok" : "bad"));
}

// --- 10 --------------------------------------------------------------------
void criterion10() {
  std::ostringstream os;
  bool ok = true;
  std::size_t sifted = 0, sent = 0;
  for (double p : {0.0, 0.03, 0.08}) {
    double errors = 0;
    std::size_t tested = 0;
    for (int r = 0; r < 1000; ++r) {
      const std::uint64_t seed = kSeed ^ (0xA000 + r + static_cast<int>(p * 1000) * 10000);
      QkdConfig cfg;
      cfg.n_sent = 2000;
      // Estimator bias is measured on every run, so no abort here.
      cfg.abort_threshold = 0.49;
      QandyChannel ch(p, Rng(seed, streams::kQkdAB));
      Rng s(seed, 1), rr(seed, 2);
      Transcript log;
      AuthChannel auth(Party::Alice, Party::Bob, log);
      const auto k = qkd_exchange(cfg, ch, s, rr, auth);
      errors += double(k.test_errors);
      tested += k.tested;
      sifted += k.sifted;
      sent += k.n_sent;
    }
    const double est = errors / double(tested);
    const double sig = p == 0.0 ? 0.0 : binomial_sigma(p, tested);
    const bool good = p == 0.0 ? est == 0.0 : std::abs(est - p) <= kSigmas * sig;
    ok = ok && good;
    os << "qber(" << p << ")=" << fmt("%.5f", est) << " ";
  }
  const double sift = double(sifted) / double(sent);
  const double zs = (sift - 0.5) / binomial_sigma(0.5, sent);
  ok = ok && std::abs(zs) <= kSigmas;
  os << "sift=" << fmt("%.5f", sift) << "(z=" << fmt("%.2f", zs) << ") ";

  // Full-mode identity and TEST-only correlation.
  int full_runs = 0, identical = 0;
  std::size_t diff = 0, len = 0, t_err = 0, t_n = 0;
  for (int r = 0; r < 200; ++r) {
    for (QkdMode mode : {QkdMode::Full, QkdMode::TestOnly}) {
      const std::uint64_t seed = kSeed ^ (0xB000 + r);
      QkdConfig cfg;
      cfg.n_sent = 6000;
      cfg.mode = mode;
      QandyChannel ch(0.05, Rng(seed, streams::kQkdAB));
      Rng s(seed, 1), rr(seed, 2);
      Transcript log;
      AuthChannel auth(Party::Alice, Party::Bob, log);
      const auto res = qkd_session(cfg, ch, s, rr, auth);
      if (res.aborted) continue;
      if (mode == QkdMode::Full) {
        ++full_runs;
        identical += res.key_sender == res.key_receiver;
      } else {
        diff += hamming_distance(res.key_sender, res.key_receiver);
        len += res.key_sender.size();
        t_err += static_cast<std::size_t>(std::llround(res.qber * double(res.tested)));
        t_n += res.tested;
      }
    }
  }
  const double km = double(diff) / double(len);
  const double qb = double(t_err) / double(t_n);
  const double zk = (km - qb) / std::sqrt(qb * (1 - qb) * (1.0 / len + 1.0 / t_n));
  ok = ok && full_runs > 0 && identical == full_runs && std::abs(zk) <= kSigmas;
  os << "full identical=" << identical << "/" << full_runs << " test-only key mismatch=" << fmt("%.5f", km)
     << " vs qber=" << fmt("%.5f", qb) << "(z=" << fmt("%.2f", zk) << ")";
  report(10, ok, "QKD sift rate, unbiased QBER, full-mode identity, test-only correlation", os.str());
}

// --- 11 --------------------------------------------------------------------
void criterion11() {
  P2AwkaParams pp;
  pp.n = 256;
  pp.p_channel = 0.02;
  pp.s_a = 0.06;
  pp.s_v = 0.10;
  const int trials = 500;
  int p2_acc = 0, aw_acc = 0;
  double p2_q = 0, aw_q = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = kSeed ^ (0xC000 + t);
    const auto a = p2_run(pp, {}, seed, t);
    const auto b = awka_run(pp, {}, seed, t);
    p2_acc += a.outcome == Outcome::HonestAcc;
    aw_acc += b.outcome == Outcome::HonestAcc;
    p2_q += a.qandies_per_signature_bit();
    aw_q += b.qandies_per_signature_bit();
  }
  const double fp2 = p2_acc / double(trials), faw = aw_acc / double(trials);
  const double ratio = aw_q / p2_q;
  report(11, fp2 >= kC11AcceptFloor && faw >= kC11AcceptFloor && ratio < 1.0,
         "P2/AWKA honest accept at p=0.02, n=256; AWKA uses fewer qandies",
         "p2 accept=" + fmt("%.4f", fp2) + " awka accept=" + fmt("%.4f", faw) + " qandies/bit p2=" +
             fmt("%.2f", p2_q / trials) + " awka=" + fmt("%.2f", aw_q / trials) + " ratio=" + fmt("%.3f", ratio));
}

// --- 12 --------------------------------------------------------------------
void criterion12() {
  bool ok = true;
  std::ostringstream os;
  for (Protocol proto : {Protocol::Lamport, Protocol::Otps, Protocol::P1, Protocol::P2, Protocol::Awka}) {
    for (Role role : {Role::Honest, Role::ForgerBob, Role::RepudiatorAlice}) {
      ExperimentPlan plan;
      plan.protocol = proto;
      plan.strategy.role = role;
      plan.n_grid = {64, 128};
      plan.trials = (proto == Protocol::P2 || proto == Protocol::Awka) ? 10 : 200;
      plan.seed = kSeed + 12;
      plan.p2.s_a = 0.06;
      plan.p2.s_v = 0.10;
      std::ostringstream a, b;
      plan.threads = 1;
      run_experiment(plan, &a);
      plan.threads = 4;
      run_experiment(plan, &b);
      const bool same = a.str() == b.str() && !a.str().empty();
      ok = ok && same;
      if (!same) os << protocol_name(proto) << "/" << role_name(role) << " differs ";
    }
  }
  report(12, ok, "same seed gives byte-identical JSON lines (1 vs 4 threads)", ok ? "15 experiments identical" : os.str());
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  try {
    criterion1();
    criterion2();
    criterion3();
    const double p_f = criterion4();
    criteria5and6(p_f);
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 100;
  }
  std::printf("acceptance: %d failing criteria, %.1fs total\n", g_failures, seconds_since(t0));
  return g_failures;
}
