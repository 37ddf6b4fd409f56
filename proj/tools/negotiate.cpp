// Copyright 2026 The Negotiation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// negotiate: experiment harness for IDM, its manipulation attacks and NIN.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "negotiation/domain.hpp"
#include "negotiation/export.hpp"
#include "negotiation/idm.hpp"
#include "negotiation/manipulation.hpp"
#include "negotiation/nin.hpp"
#include "negotiation/scenario.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace negotiation;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string scenario{kPaperPreset};
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double tol = IdmConfig{}.convergence_tol;
  int max_iter = IdmConfig{}.max_iterations;
  double max_step = StepRule{}.max_step_length;
  double spread = SecretDistribution{}.spread_ratio;
  int M = 5;
  std::optional<int> trials;  // unset selects the per-command default
  unsigned threads = 0;

  // idm
  std::string p1 = "truthful";
  std::string p2 = "truthful";
  std::optional<double> gamma1;
  std::optional<double> gamma2;

  // mre-sweep
  std::string m_range = "1:10";
  int bins = 20;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects outputs and writes manifest.json when the command finishes.
class Run {
 public:
  Run(std::string command, const Options& opt, const Scenario& scenario)
      : command_(std::move(command)), opt_(opt), scenario_(scenario),
        start_(std::chrono::steady_clock::now()) {
    fs::create_directories(opt_.out_dir);
  }

  std::ofstream open(const std::string& name) {
    const fs::path path = fs::path(opt_.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot write " + path.string());
    outputs_.push_back(name);
    return os;
  }

  void finish(const json& config) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json manifest{{"command", command_},
                  {"scenario", scenario_.label},
                  {"config", config},
                  {"seed", opt_.seed},
                  {"outputs", outputs_},
                  {"wall_clock_seconds", seconds}};
    std::ofstream os(fs::path(opt_.out_dir) / "manifest.json", std::ios::binary);
    os << manifest.dump(2) << '\n';
  }

 private:
  std::string command_;
  const Options& opt_;
  const Scenario& scenario_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> outputs_;
};

IdmConfig idm_config(const Options& opt) {
  IdmConfig cfg;
  cfg.convergence_tol = opt.tol;
  cfg.max_iterations = opt.max_iter;
  cfg.step.max_step_length = opt.max_step;
  cfg.validate();
  return cfg;
}

NinConfig nin_config(const Options& opt, int M) {
  NinConfig cfg;
  cfg.M = M;
  cfg.seed = opt.seed;
  cfg.step.max_step_length = opt.max_step;
  cfg.validate();
  return cfg;
}

json idm_config_json(const IdmConfig& cfg) {
  return {{"convergence_tol", cfg.convergence_tol},
          {"max_iterations", cfg.max_iterations},
          {"line_search_tol", cfg.step.line_search_tol},
          {"max_step_length", cfg.step.max_step_length}};
}

unsigned worker_count(const Options& opt) {
  return opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
}

std::string fmt_point(const Point& x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << '(' << x[0] << ", " << x[1] << ')';
  return os.str();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

// Strategic a3 for `party`: explicit flag, then the scenario, then the best
// response against the opponent's truthful declaration.
double strategic_gamma(Party party, const Options& opt, const Scenario& s, const IdmConfig& cfg,
                       SettlementCache& cache) {
  const auto& flag = party == Party::kFirst ? opt.gamma1 : opt.gamma2;
  const auto& preset = party == Party::kFirst ? s.strategic_gamma1 : s.strategic_gamma2;
  if (flag) return *flag;
  if (preset) return *preset;
  const UtilitySpec& self = party == Party::kFirst ? s.true1 : s.true2;
  const UtilitySpec& other = party == Party::kFirst ? s.true2 : s.true1;
  return best_response(party, self, other, s.x0, s.domain, {}, cfg, &cache).gamma;
}

UtilitySpec declaration(Party party, const std::string& mode, const Options& opt,
                        const Scenario& s, const IdmConfig& cfg, SettlementCache& cache) {
  const UtilitySpec& truth = party == Party::kFirst ? s.true1 : s.true2;
  if (mode == "truthful") return truth;
  const double gamma = strategic_gamma(party, opt, s, cfg, cache);
  return declared_utility(party, gamma, s.domain.k());
}

int cmd_idm(const Options& opt, const Scenario& s) {
  Run run("idm", opt, s);
  const IdmConfig cfg = idm_config(opt);
  SettlementCache cache;
  const UtilitySpec d1 = declaration(Party::kFirst, opt.p1, opt, s, cfg, cache);
  const UtilitySpec d2 = declaration(Party::kSecond, opt.p2, opt, s, cfg, cache);

  const NegotiationTrace trace = idm_run(d1, d2, s.x0, s.domain, cfg);
  {
    auto os = run.open("idm_trace.csv");
    write_trace_csv(os, trace, s.true1, s.true2);
  }
  const Point& x = trace.settlement();
  std::cout << "declared: p1 = (" << d1.a1 << ", " << d1.a2 << ", " << fixed(d1.a3) << "), p2 = ("
            << d2.a1 << ", " << d2.a2 << ", " << fixed(d2.a3) << ")\n"
            << "settlement: " << fmt_point(x) << '\n'
            << "true utilities: u1 = " << fixed(s.true1.value(x))
            << ", u2 = " << fixed(s.true2.value(x)) << '\n'
            << "iterations: " << trace.iterations() << '\n'
            << "converged: " << (trace.converged ? "yes" : "no") << '\n';

  json config = idm_config_json(cfg);
  config["p1"] = opt.p1;
  config["p2"] = opt.p2;
  config["declared_a3"] = {d1.a3, d2.a3};
  run.finish(config);
  if (!trace.converged) throw NumericalFailure("IDM did not converge within max_iterations");
  return kExitOk;
}

int cmd_payoff(const Options& opt, const Scenario& s) {
  Run run("payoff", opt, s);
  const IdmConfig cfg = idm_config(opt);
  SettlementCache cache;
  const double g1 = strategic_gamma(Party::kFirst, opt, s, cfg, cache);
  const double g2 = strategic_gamma(Party::kSecond, opt, s, cfg, cache);
  const StrategicProfile profile{declared_utility(Party::kFirst, g1, s.domain.k()),
                                 declared_utility(Party::kSecond, g2, s.domain.k()), s.true1,
                                 s.true2};
  const PayoffGame game = build_payoff_game(profile, s.x0, s.domain, cfg);
  const auto solution = dominant_strategy_solution(game);

  std::ostringstream report;
  const char* label[2] = {"truthful", "strategic"};
  report << "strategic declarations: p1 a3 = " << fixed(g1) << ", p2 a3 = " << fixed(g2) << '\n'
         << "payoffs (rows: p1 declares, columns: p2 declares)\n";
  report << "            truthful           strategic\n";
  for (int i = 0; i < 2; ++i) {
    report << (i == 0 ? "truthful " : "strategic");
    for (int j = 0; j < 2; ++j)
      report << "   (" << fixed(game.cells[i][j].first) << ", " << fixed(game.cells[i][j].second)
             << ')';
    report << '\n';
  }
  const bool spread = profile.declared1 != profile.true1 || profile.declared2 != profile.true2;
  if (!spread) report << "note: no strategic spread (strategic declarations equal the truth)\n";
  if (solution) {
    report << "dominant strategy solution: (p1 " << label[solution->row] << ", p2 "
           << label[solution->col] << ")" << (solution->tie ? " [tie broken toward truthful]" : "")
           << '\n';
    const bool pd = pareto_dominates(game.cells[0][0], game.cells[solution->row][solution->col]);
    report << "truthful cell Pareto-dominates it: " << (pd ? "yes" : "no") << '\n'
           << "Prisoner's-Dilemma structure: " << (pd ? "yes" : "no") << '\n';
  } else {
    report << "dominant strategy solution: none\n";
  }

  {
    auto os = run.open("payoff.csv");
    write_payoff_csv(os, game);
  }
  {
    auto os = run.open("payoff_report.txt");
    os << report.str();
  }
  std::cout << report.str();

  json config = idm_config_json(cfg);
  config["strategic_a3"] = {g1, g2};
  run.finish(config);
  return kExitOk;
}

int cmd_nin(const Options& opt, const Scenario& s) {
  const int trials = opt.trials.value_or(10);
  if (trials < 1) throw InputError("--trials must be >= 1");
  Run run("nin", opt, s);
  const NinConfig cfg = nin_config(opt, opt.M);
  const SecretDistribution dist{opt.spread};

  std::vector<TrialStats> stats;
  std::vector<std::vector<Point>> trajectories;
  for (int i = 0; i < trials; ++i) {
    Rng rng = stream_rng(opt.seed, static_cast<std::uint64_t>(i));
    std::vector<Point> path;
    stats.push_back(nin_run(s.true1, s.true2, s.x0, dist, dist, s.domain, cfg, rng,
                            i < 10 ? &path : nullptr));
    if (i < 10) trajectories.push_back(std::move(path));
  }
  {
    auto os = run.open("nin_trials.csv");
    write_trials_csv(os, cfg.M, stats);
  }
  {
    auto os = run.open("nin_trajectories.csv");
    write_trajectories_csv(os, trajectories);
  }
  double worst = 0.0, total = 0.0;
  int exhausted = 0;
  for (const auto& t : stats) {
    worst = std::max(worst, t.relative_error);
    total += t.relative_error;
    exhausted += t.exhausted;
  }
  std::cout << "trials: " << trials << ", M = " << cfg.M << ", spread = " << dist.spread_ratio
            << '\n'
            << "mean relative error: " << fixed(total / trials, 6) << '\n'
            << "max relative error: " << fixed(worst, 6) << '\n';
  if (exhausted) std::cout << "round budget exhausted in " << exhausted << " trials\n";

  // Compare against IDM under every non-truthful declaration profile.
  const IdmConfig idm_cfg = idm_config(opt);
  SettlementCache cache;
  const StrategicProfile profile{
      declared_utility(Party::kFirst, strategic_gamma(Party::kFirst, opt, s, idm_cfg, cache),
                       s.domain.k()),
      declared_utility(Party::kSecond, strategic_gamma(Party::kSecond, opt, s, idm_cfg, cache),
                       s.domain.k()),
      s.true1, s.true2};
  const PayoffGame game = build_payoff_game(profile, s.x0, s.domain, idm_cfg);
  const ParetoSegment front = s.true_frontier();
  double nearest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (i + j > 0) nearest = std::min(nearest, distance_to_frontier(front, game.settlements[i][j]));
  int closer = 0;
  double mean_distance = 0.0;
  for (const auto& t : stats) {
    closer += t.final_distance < nearest;
    mean_distance += t.final_distance / trials;
  }
  std::cout << "nearest strategic IDM settlement to the frontier: " << fixed(nearest, 6) << '\n'
            << "mean NIN distance to the frontier: " << fixed(mean_distance, 6) << '\n'
            << "NIN trials closer than every strategic IDM settlement: " << closer << " of "
            << trials << '\n';

  run.finish({{"M", cfg.M},
              {"trials", trials},
              {"spread_ratio", dist.spread_ratio},
              {"movement_threshold", cfg.movement_threshold},
              {"max_total_rounds", cfg.max_total_rounds},
              {"max_step_length", cfg.step.max_step_length}});
  return kExitOk;
}

std::vector<int> parse_m_range(const std::string& text) {
  int lo = 0, hi = 0;
  char sep = 0;
  std::istringstream in(text);
  if (text.find(':') == std::string::npos) {
    if (!(in >> lo) || !in.eof()) throw InputError("--M-range: expected 'lo:hi' or a single M");
    hi = lo;
  } else if (!(in >> lo >> sep >> hi) || sep != ':' || !in.eof()) {
    throw InputError("--M-range: expected 'lo:hi'");
  }
  if (lo < 1 || hi < lo) throw InputError("--M-range must be a nonempty range of M >= 1");
  std::vector<int> out;
  for (int m = lo; m <= hi; ++m) out.push_back(m);
  return out;
}

int cmd_mre_sweep(const Options& opt, const Scenario& s) {
  const int trials = opt.trials.value_or(500);
  if (trials < 1) throw InputError("--trials must be >= 1");
  if (opt.bins < 1) throw InputError("--bins must be >= 1");
  const std::vector<int> ms = parse_m_range(opt.m_range);
  Run run("mre-sweep", opt, s);
  const SecretDistribution dist{opt.spread};

  std::vector<SweepRow> rows;
  std::vector<std::vector<double>> errors;
  double hi = 0.0;
  for (int m : ms) {
    const MreEstimate est =
        mre_estimate(s, dist, m, trials, nin_config(opt, m), opt.seed, worker_count(opt));
    rows.push_back({m, est.mre, est.std_error, est.n, opt.seed});
    auto& e = errors.emplace_back();
    for (const auto& t : est.trials) {
      e.push_back(t.relative_error);
      hi = std::max(hi, t.relative_error);
    }
  }
  {
    auto os = run.open("mre_sweep.csv");
    write_sweep_csv(os, rows);
  }
  if (!(hi > 0.0)) hi = 1.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto os = run.open("mre_hist_M" + std::to_string(ms[i]) + ".csv");
    write_histogram_csv(os, make_histogram(errors[i], opt.bins, 0.0, hi));
  }
  for (const auto& r : rows)
    std::cout << "M = " << r.M << ": MRE = " << fixed(r.mre, 6)
              << (std::isnan(r.std_error) ? "" : " +/- " + fixed(r.std_error, 6)) << '\n';

  run.finish({{"M_range", opt.m_range},
              {"trials", trials},
              {"spread_ratio", dist.spread_ratio},
              {"bins", opt.bins},
              {"max_step_length", opt.max_step}});
  return kExitOk;
}

int cmd_attack(const Options& opt, const Scenario& s) {
  Run run("attack", opt, s);
  const IdmConfig cfg = idm_config(opt);
  const AttackReport r = run_attack(s, cfg);

  std::ostringstream report;
  report.precision(10);
  report << "announcement at " << fmt_point(r.recovery_point) << ": (" << r.announcement[0] << ", "
         << r.announcement[1] << ")\n"
         << "recovered opponent direction: (" << r.recovered_direction[0] << ", "
         << r.recovered_direction[1] << ")\n"
         << "recovered beta2: " << fixed(r.recovered_beta, 6) << " (attempts: " << r.attempts
         << ")\n"
         << "best response gamma*: " << fixed(r.response.gamma, 6) << '\n'
         << "truthful payoff: " << fixed(r.truthful_payoff) << '\n'
         << "strategic payoff: " << fixed(r.realized_payoff) << '\n'
         << "payoff lift: " << fixed(r.payoff_lift(), 6) << '\n';
  {
    auto os = run.open("attack_report.txt");
    os << report.str();
  }
  std::cout << report.str();
  run.finish(idm_config_json(cfg));
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--scenario", opt.scenario, "Scenario file or preset name")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "Root RNG seed")->capture_default_str();
  cmd->add_option("--out-dir", opt.out_dir, "Directory for output files")->capture_default_str();
  cmd->add_option("--tol", opt.tol, "IDM convergence tolerance")->capture_default_str();
  cmd->add_option("--max-iter", opt.max_iter, "IDM iteration limit")->capture_default_str();
  cmd->add_option("--max-step", opt.max_step, "Largest move per round")->capture_default_str();
  cmd->add_option("--spread", opt.spread, "Secret distribution spread ratio")->capture_default_str();
  cmd->add_option("--M", opt.M, "Consecutive failed rounds that stop NIN")->capture_default_str();
  cmd->add_option("--trials", opt.trials, "Number of NIN trials");
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-party negotiation experiments: IDM, manipulation attacks and NIN"};
  app.require_subcommand(1);
  Options opt;

  auto* idm = app.add_subcommand("idm", "Run IDM for one declared pair and export the trace");
  add_common(idm, opt);
  idm->add_option("--p1", opt.p1, "Party 1 declaration")
      ->check(CLI::IsMember({"truthful", "strategic"}));
  idm->add_option("--p2", opt.p2, "Party 2 declaration")
      ->check(CLI::IsMember({"truthful", "strategic"}));
  idm->add_option("--gamma1", opt.gamma1, "Party 1 strategic a3");
  idm->add_option("--gamma2", opt.gamma2, "Party 2 strategic a3");

  auto* payoff = app.add_subcommand("payoff", "Build the 2x2 declaration game");
  add_common(payoff, opt);
  payoff->add_option("--gamma1", opt.gamma1, "Party 1 strategic a3");
  payoff->add_option("--gamma2", opt.gamma2, "Party 2 strategic a3");

  auto* nin = app.add_subcommand("nin", "Run NIN trials and export trajectories");
  add_common(nin, opt);

  auto* sweep = app.add_subcommand("mre-sweep", "Mean relative error as a function of M");
  add_common(sweep, opt);
  sweep->add_option("--M-range", opt.m_range, "Range lo:hi of M values")->capture_default_str();
  sweep->add_option("--bins", opt.bins, "Histogram bins per M")->capture_default_str();

  auto* attack = app.add_subcommand("attack", "Recover beta2 from an announcement and best-respond");
  add_common(attack, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const Scenario scenario = load_scenario(opt.scenario);
    if (idm->parsed()) return cmd_idm(opt, scenario);
    if (payoff->parsed()) return cmd_payoff(opt, scenario);
    if (nin->parsed()) return cmd_nin(opt, scenario);
    if (sweep->parsed()) return cmd_mre_sweep(opt, scenario);
    if (attack->parsed()) return cmd_attack(opt, scenario);
  } catch (const ScenarioParseError& e) {
    std::cerr << "scenario error [" << e.key() << "]: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NegotiationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}
