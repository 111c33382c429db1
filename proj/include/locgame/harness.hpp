#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locgame/game.hpp"
#include "locgame/graph.hpp"

namespace locgame {

// Configuration for Monte Carlo trials. The graph source is either G(n,p)
// (default) or an explicit fixed graph (fixture/file); with fresh_graph_per
// trial false and no fixed graph, every trial reuses trial 0's sample.
struct ExperimentConfig {
  int n = 512;
  double p = 0.5;
  uint64_t master_seed = 1;
  int trials = 200;
  int k_min = 1;
  int k_max = 0;  // 0 -> derived: gnp ~ 2x the one-round window, else n
  double win_threshold = 0.95;
  int rounds = 30;
  RobberRule rule = RobberRule::kMayStay;
  GameMode mode = GameMode::kPhantom;
  std::string cop = "random-set";
  std::string robber = "greedy-adversary";
  bool fresh_graph_per_trial = true;
  std::optional<Graph> fixed_graph;
  int threads = 1;
};

// Throws ConfigError on invalid fields; resolves k_max when left at 0.
// Called by run_trials/estimate_zeta, exposed for the CLI's early checks.
ExperimentConfig validate_config(ExperimentConfig cfg);

struct EstimateRow {
  int k = 0;
  int trials = 0;
  int wins = 0;
  double win_rate = 0.0;
  double mean_rounds = 0.0;  // over cop wins; 0 when there were none
  uint64_t seed = 0;         // the master seed the rows derive from
};

// Plays cfg.trials independent games at probe budget k. Trial i derives
// seed_i = mix_seed(master_seed, i); from it, stream 1 seeds the graph,
// stream 2 the cop, stream 3 the robber. Aggregation happens in trial-index
// order, so any thread count gives byte-identical results.
EstimateRow run_trials(const ExperimentConfig& cfg, int k);

struct ZetaEstimate {
  std::optional<int> zeta_hat;  // absent when no k reaches the threshold
  std::vector<EstimateRow> rows;  // every evaluated k, ascending
  bool used_linear_scan = false;  // binary search found a noise violation
};

// Finds the smallest k in [k_min, k_max] whose win rate reaches the
// threshold, by bisection on the (noisily monotone) win-rate frontier.
// If evaluated rows break monotonicity beyond a 3-sigma band, every k is
// evaluated instead and the scan result wins.
ZetaEstimate estimate_zeta(const ExperimentConfig& cfg);

struct VerifyConfig {
  int n = 512;
  double p = 0.5;
  uint64_t seed = 1;
  int diameter_samples = 100;
  int concentration_samples = 100;
  double concentration_constant = 3.0;
  int collision_n = 32;
  int collision_k = 10;
  long long collision_samples = 1000000;
  int small_graph_samples = 50;
  int small_n = 7;
  int certificate_graphs = 10;
  int certificate_pairs = 10;  // (u, S) draws per graph
  int certificate_k = 0;       // 0 -> round(ln n / ln(1/rho))
  int threads = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs the five numeric certificates, in fixed order:
//   diameter-le2                 >= 99% of G(n,p) samples have diameter <= 2
//   degree-codegree-concentration>= 99% of samples pass check_concentration
//   signature-collision-rate     empirical pair-collision rate within
//                                4 binomial sigma of rho^k
//   zeta-leq-beta                eventual <= one-round number on small graphs
//   neighborhood-collision-positivity
//                                same-signature pair count > 0 in every draw
VerifyReport verify_suite(const VerifyConfig& cfg);

// CSV with the fixed schema "k,trials,wins,win_rate,mean_rounds,seed";
// floats carry 6 significant digits.
std::string rows_to_csv(std::span<const EstimateRow> rows);

// %.6g float formatting shared by every text emitter.
std::string format_float(double x);

std::string estimate_to_json(const ZetaEstimate& est, const ExperimentConfig& cfg);
std::string verify_to_text(const VerifyReport& report);
std::string verify_to_json(const VerifyReport& report);

}  // namespace locgame
