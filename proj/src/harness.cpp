#include "qds/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "qds/errors.hpp"
#include "qds/lamport.hpp"
#include "qds/rng.hpp"

namespace qds {

std::string_view protocol_name(Protocol p) noexcept {
  switch (p) {
    case Protocol::Lamport: return "lamport";
    case Protocol::Otps: return "otps";
    case Protocol::P1: return "p1";
    case Protocol::P2: return "p2";
    case Protocol::Awka: return "awka";
  }
  return "?";
}

Protocol protocol_from_name(std::string_view name) {
  for (Protocol p : {Protocol::Lamport, Protocol::Otps, Protocol::P1, Protocol::P2, Protocol::Awka})
    if (protocol_name(p) == name) return p;
  throw InvalidParameter("unknown protocol '" + std::string(name) + "'");
}

void ExperimentPlan::validate() const {
  if (trials == 0) throw InvalidParameter("trials must be at least 1");
  if (n_grid.empty()) throw InvalidParameter("n grid is empty");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw InvalidParameter("n grid must be strictly increasing");
  for (std::size_t n : n_grid) {
    switch (protocol) {
      case Protocol::Lamport:
        if (n == 0) throw InvalidParameter("Lamport key length must be positive");
        if (strategy.role == Role::SplitKeyAlice)
          throw InvalidParameter("split-key strategy applies only to p1");
        break;
      case Protocol::Otps: {
        OtpsParams o = otps;
        o.n = n;
        o.validate();
        if (strategy.role == Role::SplitKeyAlice)
          throw InvalidParameter("split-key strategy applies only to p1");
        break;
      }
      case Protocol::P1: {
        P1Params p = p1;
        p.n = n;
        p.validate();
        break;
      }
      case Protocol::P2:
      case Protocol::Awka: {
        P2AwkaParams p = p2;
        p.n = n;
        p.variant = protocol == Protocol::P2 ? Variant::P2 : Variant::Awka;
        p.validate();
        if (strategy.role == Role::SplitKeyAlice)
          throw InvalidParameter("split-key strategy applies only to p1");
        break;
      }
    }
  }
}

nlohmann::ordered_json plan_to_json(const ExperimentPlan& plan) {
  nlohmann::ordered_json j;
  j["protocol"] = protocol_name(plan.protocol);
  j["strategy"] = role_name(plan.strategy.role);
  j["budget"] = plan.strategy.budget ? nlohmann::ordered_json(*plan.strategy.budget)
                                     : nlohmann::ordered_json(nullptr);
  j["flip"] = plan.strategy.flip == FlipKind::Value ? "value" : "basis";
  j["n"] = plan.n_grid;
  j["trials"] = plan.trials;
  j["seed"] = plan.seed;
  switch (plan.protocol) {
    case Protocol::Lamport:
      j["owf"] = plan.owf;
      break;
    case Protocol::Otps:
      j["s_v"] = plan.otps.s_v;
      break;
    case Protocol::P1:
      j["s_a"] = plan.p1.s_a;
      j["s_v"] = plan.p1.s_v;
      j["p_channel"] = plan.p1.p_channel;
      j["eps_delta"] = plan.p1.eps_delta;
      j["test_fraction"] = plan.p1.test_fraction;
      j["p_e"] = plan.p1.p_e_expected;
      j["p_f"] = plan.p1.p_f;
      break;
    case Protocol::P2:
    case Protocol::Awka:
      j["s_a"] = plan.p2.s_a;
      j["s_v"] = plan.p2.s_v;
      j["p_channel"] = plan.p2.p_channel;
      j["p_e"] = plan.p2.p_e_expected;
      j["n_sent"] = plan.p2.qkd.n_sent;
      j["test_fraction"] = plan.p2.qkd.test_fraction;
      j["eps_pa"] = plan.p2.qkd.eps_pa;
      j["abort_threshold"] = plan.p2.qkd.abort_threshold;
      j["f_ec"] = plan.p2.qkd.f_ec;
      break;
  }
  return j;
}

ExperimentPlan plan_from_json(const nlohmann::json& j, ExperimentPlan plan) {
  auto num = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = j.at(key).get<double>();
  };
  if (j.contains("protocol")) plan.protocol = protocol_from_name(j.at("protocol").get<std::string>());
  if (j.contains("strategy")) plan.strategy.role = role_from_name(j.at("strategy").get<std::string>());
  if (j.contains("budget") && !j.at("budget").is_null())
    plan.strategy.budget = j.at("budget").get<std::size_t>();
  if (j.contains("flip")) {
    const auto f = j.at("flip").get<std::string>();
    if (f != "value" && f != "basis") throw InvalidParameter("flip must be 'value' or 'basis'");
    plan.strategy.flip = f == "value" ? FlipKind::Value : FlipKind::Basis;
  }
  if (j.contains("n")) {
    const auto& n = j.at("n");
    plan.n_grid = n.is_array() ? n.get<std::vector<std::size_t>>()
                               : std::vector<std::size_t>{n.get<std::size_t>()};
  }
  if (j.contains("trials")) plan.trials = j.at("trials").get<std::size_t>();
  if (j.contains("seed")) plan.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("owf")) plan.owf = j.at("owf").get<std::string>();
  if (j.contains("threads")) plan.threads = j.at("threads").get<unsigned>();

  num("s_a", plan.p1.s_a);
  num("s_v", plan.p1.s_v);
  num("p_channel", plan.p1.p_channel);
  num("eps_delta", plan.p1.eps_delta);
  num("test_fraction", plan.p1.test_fraction);
  num("p_e", plan.p1.p_e_expected);
  num("p_f", plan.p1.p_f);
  num("s_v", plan.otps.s_v);
  num("s_a", plan.p2.s_a);
  num("s_v", plan.p2.s_v);
  num("p_channel", plan.p2.p_channel);
  num("p_e", plan.p2.p_e_expected);
  num("test_fraction", plan.p2.qkd.test_fraction);
  num("eps_pa", plan.p2.qkd.eps_pa);
  num("abort_threshold", plan.p2.qkd.abort_threshold);
  num("f_ec", plan.p2.qkd.f_ec);
  if (j.contains("n_sent")) plan.p2.qkd.n_sent = j.at("n_sent").get<std::size_t>();
  return plan;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const ExperimentPlan& plan) { return fnv1a_hex(plan_to_json(plan).dump()); }

nlohmann::ordered_json output_meta(const ExperimentPlan& plan) {
  nlohmann::ordered_json j;
  j["type"] = "meta";
  j["version"] = kVersion;
  j["seed"] = plan.seed;
  j["config_hash"] = config_hash(plan);
  j["rng"] = Rng::kAlgorithm;
  j["config"] = plan_to_json(plan);
  return j;
}

// ---------------------------------------------------------------------------
// P1

namespace {

std::vector<std::uint8_t> chars_payload(std::span<const QandyChar> chars,
                                        const std::vector<std::size_t>& idx) {
  std::vector<std::uint8_t> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(static_cast<std::uint8_t>(to_letter(chars[i])));
  return out;
}

std::vector<std::uint8_t> index_payload(const std::vector<std::size_t>& idx) {
  std::vector<std::uint8_t> out;
  for (std::size_t i : idx)
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(i >> s));
  return out;
}

std::vector<std::size_t> set_union(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

P1TrialResult run_p1_trial(const P1Params& params, const Strategy& strategy, std::uint64_t seed,
                           Transcript* log) {
  params.validate();
  Transcript local(seed);
  Transcript& tr = log ? *log : local;

  Rng alice(seed, streams::kAlice);
  Rng bob_rng(seed, streams::kBob);
  Rng charlie_rng(seed, streams::kCharlie);
  Rng adv(seed, streams::kAdversary);
  QandyChannel q_ab(params.p_channel, Rng(seed, streams::kChannelAB));
  QandyChannel q_ac(params.p_channel, Rng(seed, streams::kChannelAC));
  QandyChannel q_bc(params.p_channel, Rng(seed, streams::kChannelBC));
  QandyChannel q_cb(params.p_channel, Rng(seed, streams::kChannelCB));
  AuthChannel a_ab(Party::Alice, Party::Bob, tr);
  AuthChannel a_ac(Party::Alice, Party::Charlie, tr);
  AuthChannel a_bc(Party::Bob, Party::Charlie, tr);
  AuthChannel a_cb(Party::Charlie, Party::Bob, tr);

  // Keys. Under split-key Alice keeps Bob's key as her signing key and
  // discloses Charlie's separately in his TESTs.
  P1KeyMaterial material;
  PrivateKey charlie_key;
  if (strategy.role == Role::SplitKeyAlice) {
    SplitKeys sk = split_key_alice(params, alice);
    charlie_key = sk.for_charlie;
    material = p1_material_from(std::move(sk.for_bob), sk.for_charlie);
  } else {
    material = p1_keygen(params, alice);
    charlie_key = material.key;
  }
  auto [bob, charlie] = p1_distribute(material, q_ab, q_ac);

  // Symmetrization; the forger measures his copy of Q_1 before forwarding.
  std::optional<ForgerObservation> forger;
  for (Bit b = 0; b < 2; ++b) {
    const bool forging = strategy.role == Role::ForgerBob && b == 1;
    std::vector<std::size_t> fb = p1_choose_forward(bob, b, bob_rng);
    std::vector<std::size_t> fc = p1_choose_forward(charlie, b, charlie_rng);
    std::vector<HeldQandy> from_bob;
    if (forging) {
      forger = forge_min_error(bob, b, params.n, adv);
      from_bob = forger_regenerate(*forger, fb);
      bob.forwarded[b] = fb;
      for (const auto& hr : forger->records)
        if (!std::binary_search(fb.begin(), fb.end(), hr.rec.index)) bob.records[b].push_back(hr);
    } else {
      from_bob = p1_take_handles(bob, b, fb);
    }
    auto from_charlie = p1_take_handles(charlie, b, fc);
    p1_deliver(std::move(from_bob), q_bc, charlie, b);
    p1_deliver(std::move(from_charlie), q_cb, bob, b);
    p1_measure_all(bob, b, forging ? adv : bob_rng);
    p1_measure_all(charlie, b, charlie_rng);
    a_bc.send("symmetrize", "forwarded-indices", index_payload(fb));
    a_cb.send("symmetrize", "forwarded-indices", index_payload(fc));
  }

  // TESTs: A-B and A-C for each b.
  P1TrialResult res;
  for (Bit b = 0; b < 2; ++b) {
    auto rb = p1_choose_reveals(params, bob, b, alice, bob_rng);
    auto rc = p1_choose_reveals(params, charlie, b, alice, charlie_rng);
    a_ab.send("test", "disclosure", chars_payload(material.key.x[b], rb));
    a_ac.send("test", "disclosure", chars_payload(charlie_key.x[b], rc));
    try {
      res.tests.push_back(p1_test(params, material.key.x[b], bob, b, rb));
      res.tests.push_back(p1_test(params, charlie_key.x[b], charlie, b, rc));
    } catch (const InsufficientSample&) {
      res.insufficient_sample = true;
      res.aborted = true;
    }
    const auto ex = set_union(rb, rc);
    bob.excluded[b] = ex;
    charlie.excluded[b] = ex;
  }
  for (const auto& t : res.tests) res.aborted = res.aborted || t.abort;

  // Signature phase.
  P1Signature sig;
  switch (strategy.role) {
    case Role::Honest:
    case Role::SplitKeyAlice:
      sig = p1_sign(material.key, 0);
      break;
    case Role::RepudiatorAlice:
      sig = p1_sign(material.key, 0);
      res.budget = strategy.budget.value_or(
          default_repudiation_budget(params.n, params.s_a, params.s_v));
      sig.chars = repudiate_budget(sig.chars, res.budget, adv, strategy.flip);
      break;
    case Role::ForgerBob:
      sig = forged_signature(*forger);
      break;
  }
  if (strategy.role != Role::ForgerBob) {
    std::vector<std::size_t> all(params.n);
    for (std::size_t i = 0; i < params.n; ++i) all[i] = i;
    a_ab.send("sign", "signature", chars_payload(sig.chars, all));
    const P1Check chk = p1_verify(bob, sig, params.s_a);
    res.bob = chk.verdict;
    res.bob_count = chk.count;
  }
  a_bc.send("dispute", "signature", {});
  const P1Arbitration arb = p1_arbitrate(charlie, sig, params.s_v);
  res.charlie = arb.result;
  res.charlie_count = arb.count;
  res.charlie_raw = p1_count(charlie, sig, false);
  res.outcome = classify(strategy.role, res.aborted, res.bob, res.charlie);
  return res;
}

// ---------------------------------------------------------------------------
// Classical schemes

Outcome run_lamport_trial(std::size_t n, const std::string& owf, const Strategy& strategy,
                          std::uint64_t seed, nlohmann::ordered_json* detail) {
  Rng alice(seed, streams::kAlice);
  Rng adv(seed, streams::kAdversary);
  LamportKeyPair kp = lamport_gen(n, alice, owf);
  std::optional<Verdict> verdict;
  std::optional<Arbitration> arb;
  switch (strategy.role) {
    case Role::Honest:
      verdict = lamport_ver(kp.vk(), 0, kp.sign(0));
      break;
    case Role::ForgerBob: {
      // Bob saw a signature on 0 and guesses one on 1.
      (void)kp.sign(0);
      const BitString guess = random_bits(adv, n);
      arb = lamport_arbitrate(kp.vk(), 1, guess);
      break;
    }
    case Role::RepudiatorAlice:
    case Role::SplitKeyAlice: {
      BitString sigma = kp.sign(0);
      const std::size_t budget = strategy.budget.value_or(1);
      sigma = repudiate_bits(sigma, std::min(budget, sigma.size()), adv);
      verdict = lamport_ver(kp.vk(), 0, sigma);
      arb = lamport_arbitrate(kp.vk(), 0, sigma);
      break;
    }
  }
  const Outcome o = classify(strategy.role, false, verdict, arb);
  if (detail) (*detail)["owf"] = owf;
  return o;
}

Outcome run_otps_trial(const OtpsParams& params, const Strategy& strategy, std::uint64_t seed,
                       nlohmann::ordered_json* detail) {
  params.validate();
  Transcript tr(seed);
  Rng alice(seed, streams::kAlice);
  Rng bob_rng(seed, streams::kBob);
  Rng charlie_rng(seed, streams::kCharlie);
  Rng adv(seed, streams::kAdversary);
  Rng pads(seed, streams::kPhysics);
  PadStore pad_ab(random_bits(pads, 2 * params.n));
  PadStore pad_ac(random_bits(pads, 2 * params.n));
  PadStore pad_bc(random_bits(pads, 4 * otps_forward_message_bits(params.n)));
  AuthChannel ab(Party::Alice, Party::Bob, tr);
  AuthChannel ac(Party::Alice, Party::Charlie, tr);
  AuthChannel bc(Party::Bob, Party::Charlie, tr);
  AuthChannel cb(Party::Charlie, Party::Bob, tr);

  const OtpsAliceKeys keys = otps_keygen(params, alice);
  auto [bob, charlie] = otps_distribute(params, keys, pad_ab, ab, pad_ac, ac);
  otps_symmetrize(params, bob, charlie, pad_bc, bc, cb, bob_rng, charlie_rng);

  OtpsSignature sig;
  std::optional<Verdict> verdict;
  std::size_t budget = 0;
  switch (strategy.role) {
    case Role::Honest:
      sig = otps_sign(keys, 0);
      break;
    case Role::RepudiatorAlice:
    case Role::SplitKeyAlice:
      sig = otps_sign(keys, 0);
      budget = strategy.budget.value_or(
          static_cast<std::size_t>(std::ceil(params.s_v * static_cast<double>(params.n) - 1e-9)));
      sig.xc = repudiate_bits(sig.xc, budget, adv);
      break;
    case Role::ForgerBob:
      sig = forge_otps(bob, 1, params.n, adv);
      break;
  }
  if (strategy.role != Role::ForgerBob) verdict = otps_verify(bob, sig);
  const Arbitration arb = otps_arbitrate(charlie, sig, params.s_v);
  const Outcome o = classify(strategy.role, false, verdict, arb);
  if (detail) {
    const HolderView bv = count_mismatches(bob, sig);
    const HolderView cv = count_mismatches(charlie, sig);
    (*detail)["budget"] = budget;
    (*detail)["mismatch_counts"] = {
        {"bob", {{"own", bv.own.mismatches}, {"received", bv.received.mismatches}}},
        {"charlie",
         {{"own", cv.own.mismatches},
          {"received", cv.received.mismatches},
          {"own_fraction", cv.own.fraction()}}}};
  }
  return o;
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

nlohmann::ordered_json count_json(const MismatchCount& c) {
  return {{"mismatches", c.mismatches},
          {"informative", c.informative},
          {"records", c.records},
          {"kept", {c.mismatches_by_prov[0], c.informative_by_prov[0], c.records_by_prov[0]}},
          {"received", {c.mismatches_by_prov[1], c.informative_by_prov[1], c.records_by_prov[1]}}};
}

nlohmann::ordered_json test_json(const TestReport& t) {
  return {{"revealed", t.revealed.size()}, {"t", t.t},         {"mismatches", t.mismatches},
          {"rate", t.rate},                {"delta", t.delta}, {"abort", t.abort}};
}

}  // namespace

TrialRecord run_trial(const ExperimentPlan& plan, std::size_t n, std::uint64_t global_index) {
  TrialRecord rec;
  rec.n = n;
  rec.trial = global_index;
  rec.seed = plan.seed ^ global_index;
  auto& j = rec.json;
  j["protocol"] = protocol_name(plan.protocol);
  j["strategy"] = role_name(plan.strategy.role);
  j["n"] = n;
  j["trial"] = global_index;
  j["seed"] = rec.seed;

  switch (plan.protocol) {
    case Protocol::Lamport: {
      nlohmann::ordered_json d;
      rec.outcome = run_lamport_trial(n, plan.owf, plan.strategy, rec.seed, &d);
      j["outcome"] = outcome_name(rec.outcome);
      break;
    }
    case Protocol::Otps: {
      OtpsParams p = plan.otps;
      p.n = n;
      nlohmann::ordered_json d;
      rec.outcome = run_otps_trial(p, plan.strategy, rec.seed, &d);
      j["s_v"] = p.s_v;
      j["outcome"] = outcome_name(rec.outcome);
      for (auto& [k, v] : d.items()) j[k] = v;
      break;
    }
    case Protocol::P1: {
      P1Params p = plan.p1;
      p.n = n;
      const P1TrialResult r = run_p1_trial(p, plan.strategy, rec.seed);
      rec.outcome = r.outcome;
      j["s_a"] = p.s_a;
      j["s_v"] = p.s_v;
      j["p_channel"] = p.p_channel;
      j["outcome"] = outcome_name(r.outcome);
      j["aborted"] = r.aborted;
      if (plan.strategy.role == Role::RepudiatorAlice) j["budget"] = r.budget;
      j["mismatch_counts"] = {{"bob", count_json(r.bob_count)},
                              {"charlie", count_json(r.charlie_count)}};
      auto tests = nlohmann::ordered_json::array();
      for (const auto& t : r.tests) tests.push_back(test_json(t));
      j["test_reports"] = tests;
      break;
    }
    case Protocol::P2:
    case Protocol::Awka: {
      P2AwkaParams p = plan.p2;
      p.n = n;
      const P2AwkaResult r = plan.protocol == Protocol::P2
                                 ? p2_run(p, plan.strategy, rec.seed, global_index)
                                 : awka_run(p, plan.strategy, rec.seed, global_index);
      rec.outcome = r.outcome;
      const nlohmann::ordered_json detail = r.to_json();
      for (const auto& [k, v] : detail.items())
        if (k != "protocol" && k != "strategy") j[k] = v;
      break;
    }
  }
  return rec;
}

double PointSummary::freq(Outcome o) const {
  return trials == 0 ? 0.0 : static_cast<double>(count(o)) / static_cast<double>(trials);
}

std::vector<DecayPoint> ExperimentResult::decay_points(Outcome event) const {
  std::vector<DecayPoint> out;
  for (const auto& p : points)
    out.push_back({static_cast<double>(p.n), p.count(event), p.trials});
  return out;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream* jsonl) {
  plan.validate();
  ExperimentResult res;
  res.meta = output_meta(plan);
  if (jsonl) *jsonl << res.meta.dump() << '\n';

  unsigned workers = plan.threads ? plan.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);

  for (std::size_t pi = 0; pi < plan.n_grid.size(); ++pi) {
    const std::size_t n = plan.n_grid[pi];
    const std::uint64_t base = static_cast<std::uint64_t>(pi) * plan.trials;
    std::vector<Outcome> outcomes(plan.trials);
    std::vector<std::string> lines(jsonl ? plan.trials : 0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto work = [&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= plan.trials || failed.load()) return;
        try {
          TrialRecord r = run_trial(plan, n, base + t);
          outcomes[t] = r.outcome;
          if (jsonl) lines[t] = r.json.dump();
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    PointSummary ps;
    ps.n = n;
    ps.trials = plan.trials;
    for (Outcome o : outcomes) ++ps.counts[static_cast<std::size_t>(o)];
    res.points.push_back(ps);
    if (jsonl)
      for (const auto& l : lines) *jsonl << l << '\n';
  }
  return res;
}

void write_sweep_csv(const ExperimentResult& result, std::ostream& os) {
  os << "# version=" << result.meta.value("version", "") << '\n';
  os << "# seed=" << result.meta.value("seed", std::uint64_t{0}) << '\n';
  os << "# config_hash=" << result.meta.value("config_hash", "") << '\n';
  os << "# rng=" << result.meta.value("rng", "") << '\n';
  if (!result.points.empty()) os << "# trials=" << result.points.front().trials << '\n';
  os << "n,event,freq,wilson_lo,wilson_hi\n";
  char buf[128];
  for (const auto& p : result.points) {
    for (std::size_t k = 0; k < kOutcomeCount; ++k) {
      const auto o = static_cast<Outcome>(k);
      const Interval w = wilson(p.count(o), p.trials);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", p.freq(o), w.lo, w.hi);
      os << p.n << ',' << outcome_name(o) << ',' << buf << '\n';
    }
  }
}

std::vector<DecayPoint> read_sweep_csv(std::istream& is, std::string_view event) {
  std::size_t trials = 0;
  std::vector<DecayPoint> out;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# trials=", 0) == 0) trials = std::stoull(line.substr(9));
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string n, ev, freq;
    std::getline(ss, n, ',');
    std::getline(ss, ev, ',');
    std::getline(ss, freq, ',');
    if (ev != event) continue;
    if (trials == 0) throw InsufficientData("sweep CSV lacks a '# trials=' line");
    const double f = std::stod(freq);
    out.push_back({std::stod(n), static_cast<std::size_t>(std::llround(f * static_cast<double>(trials))),
                   trials});
  }
  return out;
}

double event_gap(const ExperimentPlan& plan, Outcome event) {
  double p_e = 0, s_a = 0, s_v = 0, p_f = 0;
  switch (plan.protocol) {
    case Protocol::P1:
      p_e = plan.p1.p_e_expected;
      s_a = plan.p1.s_a;
      s_v = plan.p1.s_v;
      p_f = plan.p1.p_f;
      break;
    case Protocol::Awka:
    case Protocol::P2:
      p_e = plan.p2.p_e_expected;
      s_a = plan.p2.s_a;
      s_v = plan.p2.s_v;
      p_f = 0.25;
      break;
    case Protocol::Otps:
      s_v = plan.otps.s_v;
      p_f = 0.25;
      break;
    case Protocol::Lamport:
      return 0.0;
  }
  switch (event) {
    case Outcome::ForgeSucc: return p_f - s_v;
    case Outcome::RepudSucc: return s_v - s_a;
    case Outcome::HonestAbort: return s_a - p_e;
    default: return 0.0;
  }
}

}  // namespace qds
