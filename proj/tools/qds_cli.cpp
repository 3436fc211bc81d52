// Command-line front end: run, sweep, optimize, fit, qkd.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qds/errors.hpp"
#include "qds/harness.hpp"
#include "qds/qkd.hpp"
#include "qds/rng.hpp"
#include "qds/stats.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct PlanFlags {
  std::string config;
  std::string protocol;
  std::string strategy;
  std::string flip;
  std::vector<std::size_t> n;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  double s_a = 0, s_v = 0, p_channel = 0, eps_delta = 0, test_fraction = 0, p_e = 0, p_f = 0;
  double eps_pa = 0, abort_threshold = 0;
  std::size_t n_sent = 0;
  std::string owf;
  unsigned threads = 0;
  std::string out;
  std::vector<CLI::Option*> opts;
};

void add_plan_flags(CLI::App* cmd, PlanFlags& f) {
  auto keep = [&](CLI::Option* o) { f.opts.push_back(o); };
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  keep(cmd->add_option("--protocol", f.protocol, "lamport|otps|p1|p2|awka"));
  keep(cmd->add_option("--strategy", f.strategy, "honest|forger|repudiator|split-key"));
  keep(cmd->add_option("--flip", f.flip, "repudiation flip kind: value|basis"));
  keep(cmd->add_option("--n", f.n, "key length(s), comma separated")->delimiter(','));
  keep(cmd->add_option("--trials", f.trials, "trials per grid point"));
  keep(cmd->add_option("--seed", f.seed, "base seed"));
  keep(cmd->add_option("--budget", f.budget, "repudiation flips"));
  keep(cmd->add_option("--s-a", f.s_a, "recipient threshold"));
  keep(cmd->add_option("--s-v", f.s_v, "arbiter threshold"));
  keep(cmd->add_option("--p-channel", f.p_channel, "qandy channel flip probability"));
  keep(cmd->add_option("--eps-delta", f.eps_delta, "TEST confidence parameter"));
  keep(cmd->add_option("--test-fraction", f.test_fraction, "fraction revealed per TEST"));
  keep(cmd->add_option("--p-e", f.p_e, "design noise rate"));
  keep(cmd->add_option("--p-f", f.p_f, "forger mismatch rate"));
  keep(cmd->add_option("--eps-pa", f.eps_pa, "privacy amplification failure budget"));
  keep(cmd->add_option("--abort-threshold", f.abort_threshold, "QKD QBER abort threshold"));
  keep(cmd->add_option("--n-sent", f.n_sent, "qandies per QKD session (0 = auto)"));
  keep(cmd->add_option("--owf", f.owf, "Lamport one-way function: sha256|toy-parity"));
  keep(cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)"));
  cmd->add_option("--out", f.out, "output file (default stdout)");
}

qds::ExperimentPlan build_plan(const PlanFlags& f) {
  json j = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw qds::InvalidParameter("cannot open config " + f.config);
    in >> j;
  }
  for (CLI::Option* o : f.opts) {
    if (o->count() == 0) continue;
    const std::string name = o->get_name().substr(2);
    std::string key = name;
    for (char& c : key)
      if (c == '-') c = '_';
    if (name == "protocol") j[key] = f.protocol;
    else if (name == "strategy") j[key] = f.strategy;
    else if (name == "flip") j[key] = f.flip;
    else if (name == "owf") j[key] = f.owf;
    else if (name == "n") j[key] = f.n;
    else if (name == "trials") j[key] = f.trials;
    else if (name == "seed") j[key] = f.seed;
    else if (name == "budget") j[key] = f.budget;
    else if (name == "threads") j[key] = f.threads;
    else if (name == "n-sent") j[key] = f.n_sent;
    else if (name == "s-a") j[key] = f.s_a;
    else if (name == "s-v") j[key] = f.s_v;
    else if (name == "p-channel") j[key] = f.p_channel;
    else if (name == "eps-delta") j[key] = f.eps_delta;
    else if (name == "test-fraction") j[key] = f.test_fraction;
    else if (name == "p-e") j[key] = f.p_e;
    else if (name == "p-f") j[key] = f.p_f;
    else if (name == "eps-pa") j[key] = f.eps_pa;
    else if (name == "abort-threshold") j[key] = f.abort_threshold;
  }
  qds::ExperimentPlan plan = qds::plan_from_json(j);
  plan.validate();
  return plan;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw qds::InvalidParameter("cannot open output " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qandy digital signature simulator"};
  app.require_subcommand(1);

  PlanFlags run_f;
  auto* run = app.add_subcommand("run", "run trials and write one JSON line per trial");
  add_plan_flags(run, run_f);

  PlanFlags sweep_f;
  auto* sweep = app.add_subcommand("sweep", "run a grid of n and write the summary CSV");
  add_plan_flags(sweep, sweep_f);
  std::string sweep_jsonl;
  sweep->add_option("--jsonl", sweep_jsonl, "also write per-trial JSON lines here");

  double opt_pe = 0, opt_pf = 0.125, w_a = 1, w_v = 1, w_f = 1;
  auto* optimize = app.add_subcommand("optimize", "equal-gap thresholds between p_e and p_f");
  optimize->add_option("--p-e", opt_pe)->required();
  optimize->add_option("--p-f", opt_pf)->required();
  optimize->add_option("--w-a", w_a, "relative gap p_e -> s_a");
  optimize->add_option("--w-v", w_v, "relative gap s_a -> s_v");
  optimize->add_option("--w-f", w_f, "relative gap s_v -> p_f");

  std::string fit_in, fit_event = "forge_succ";
  double fit_gap = 0;
  auto* fit = app.add_subcommand("fit", "exponential decay fit over a sweep CSV");
  fit->add_option("--in", fit_in)->required();
  fit->add_option("--event", fit_event);
  fit->add_option("--gap", fit_gap, "threshold gap for the fitted constant");

  qds::QkdConfig qcfg;
  std::string q_mode = "full", q_out;
  double q_p = 0.0;
  std::uint64_t q_seed = 1;
  auto* qkd = app.add_subcommand("qkd", "one QKD session summary");
  qkd->add_option("--mode", q_mode, "full|test-only");
  qkd->add_option("--n-sent", qcfg.n_sent);
  qkd->add_option("--p-channel", q_p);
  qkd->add_option("--test-fraction", qcfg.test_fraction);
  qkd->add_option("--eps-pa", qcfg.eps_pa);
  qkd->add_option("--abort-threshold", qcfg.abort_threshold);
  qkd->add_option("--seed", q_seed);
  qkd->add_option("--out", q_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto plan = build_plan(run_f);
      Output out(run_f.out);
      qds::run_experiment(plan, &out.stream());
    } else if (*sweep) {
      const auto plan = build_plan(sweep_f);
      std::ofstream jl;
      if (!sweep_jsonl.empty()) jl.open(sweep_jsonl, std::ios::binary);
      const auto res = qds::run_experiment(plan, jl.is_open() ? &jl : nullptr);
      Output out(sweep_f.out);
      qds::write_sweep_csv(res, out.stream());
    } else if (*optimize) {
      const auto t = qds::optimize_thresholds(opt_pe, opt_pf, w_a, w_v, w_f);
      ordered_json j;
      j["version"] = qds::kVersion;
      j["p_e"] = opt_pe;
      j["p_f"] = opt_pf;
      j["config_hash"] = qds::fnv1a_hex(j.dump());
      j["s_a"] = t.s_a;
      j["s_v"] = t.s_v;
      std::cout << j.dump() << '\n';
    } else if (*fit) {
      std::ifstream in(fit_in);
      if (!in) throw qds::InvalidParameter("cannot open " + fit_in);
      std::stringstream buf;
      buf << in.rdbuf();
      const std::string text = buf.str();
      std::istringstream rd(text);
      const auto pts = qds::read_sweep_csv(rd, fit_event);
      ordered_json j;
      j["version"] = qds::kVersion;
      std::istringstream meta(text);
      std::string line;
      while (std::getline(meta, line) && !line.empty() && line[0] == '#') {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(2, eq - 2);
        if (key == "seed" || key == "config_hash") j[key] = line.substr(eq + 1);
      }
      j["event"] = fit_event;
      j["fit"] = qds::fit_decay(pts, fit_gap).to_json();
      std::cout << j.dump(2) << '\n';
    } else if (*qkd) {
      qcfg.mode = qds::qkd_mode_from_name(q_mode);
      qds::QandyChannel ch(q_p, qds::Rng(q_seed, qds::streams::kQkdAB));
      qds::Rng s(q_seed, qds::streams::kAlice);
      qds::Rng r(q_seed, qds::streams::kBob);
      qds::Transcript log;
      qds::AuthChannel auth(qcfg.sender, qcfg.receiver, log);
      ordered_json j;
      j["version"] = qds::kVersion;
      j["seed"] = q_seed;
      const ordered_json cfg_json = {{"mode", q_mode},          {"n_sent", qcfg.n_sent},
                                     {"p_channel", q_p},        {"test_fraction", qcfg.test_fraction},
                                     {"eps_pa", qcfg.eps_pa},   {"abort_threshold", qcfg.abort_threshold},
                                     {"seed", q_seed}};
      j["config_hash"] = qds::fnv1a_hex(cfg_json.dump());
      try {
        const auto res = qds::qkd_session(qcfg, ch, s, r, auth);
        const ordered_json summary = res.summary();
        for (const auto& [k, v] : summary.items()) j[k] = v;
      } catch (const qds::KeyTooShort& e) {
        j["error"] = e.what();
      }
      Output out(q_out);
      out.stream() << j.dump() << '\n';
    }
  } catch (const qds::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
