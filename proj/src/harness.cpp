#include "locgame/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "locgame/exact.hpp"
#include "locgame/rng.hpp"
#include "locgame/strategies.hpp"

namespace locgame {

namespace {

// Runs fn(i) for i in [0, count), at most `threads` workers, results keyed
// by index. Deterministic regardless of thread count: every consumer of the
// output reads it in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(long long count, int threads, Fn&& fn) {
  std::vector<T> results(count);
  if (threads <= 1 || count <= 1) {
    for (long long i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = static_cast<int>(std::min<long long>(threads, count));
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

int default_k_max(const ExperimentConfig& cfg) {
  if (cfg.fixed_graph) return cfg.n;
  const double q = 1.0 - cfg.p;
  const double rho = cfg.p * cfg.p + q * q;
  if (!(rho < 1.0)) return cfg.n;
  // Twice the one-round theoretical budget: generous headroom for the
  // bisection while staying far below n at scale.
  const int guess = static_cast<int>(std::ceil(4.0 * std::log(cfg.n) / std::log(1.0 / rho)));
  return std::min(cfg.n, std::max(cfg.k_min, guess));
}

struct TrialResult {
  uint8_t cop_won = 0;
  int rounds_used = 0;
};

}  // namespace

ExperimentConfig validate_config(ExperimentConfig cfg) {
  if (cfg.fixed_graph) {
    cfg.n = cfg.fixed_graph->n();
    if (cfg.n < 1) throw ConfigError("fixed graph must be non-empty");
  } else {
    if (cfg.n < 2) throw ConfigError("n must be >= 2 when sampling graphs");
    if (!(cfg.p > 0.0 && cfg.p < 1.0)) throw ConfigError("p must lie strictly in (0,1)");
  }
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.rounds < 1) throw ConfigError("rounds must be >= 1");
  if (!(cfg.win_threshold > 0.0 && cfg.win_threshold <= 1.0))
    throw ConfigError("win_threshold must lie in (0,1]");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");

  const StrategyKind cop = parse_strategy_kind(cfg.cop);
  if (cop != StrategyKind::kRandomSet && cop != StrategyKind::kGreedySplit)
    throw ConfigError("'" + cfg.cop + "' cannot play the cop role");
  const StrategyKind robber = parse_strategy_kind(cfg.robber);
  if (cfg.mode == GameMode::kPhantom) {
    if (robber != StrategyKind::kGreedyAdversary)
      throw ConfigError("'" + cfg.robber + "' cannot play the phantom adversary");
  } else {
    if (robber != StrategyKind::kRandomWalker)
      throw ConfigError("'" + cfg.robber + "' cannot play the embodied robber");
  }

  if (cfg.k_min < 1) throw ConfigError("k_min must be >= 1");
  if (cfg.k_max == 0) cfg.k_max = default_k_max(cfg);
  if (cfg.k_max < cfg.k_min) throw ConfigError("k range is empty");
  if (cfg.k_max > cfg.n) throw ConfigError("k range exceeds the vertex count");
  return cfg;
}

EstimateRow run_trials(const ExperimentConfig& raw, int k) {
  const ExperimentConfig cfg = validate_config(raw);
  if (k < 1 || k > cfg.n) throw ConfigError("k must lie in [1, n]");

  const StrategyKind cop_kind = parse_strategy_kind(cfg.cop);
  const StrategyKind robber_kind = parse_strategy_kind(cfg.robber);

  // Fixed-graph mode reuses trial 0's graph for every trial.
  std::optional<Graph> shared;
  if (cfg.fixed_graph) {
    shared = *cfg.fixed_graph;
  } else if (!cfg.fresh_graph_per_trial) {
    shared = sample_gnp({cfg.n, cfg.p, mix_seed(mix_seed(cfg.master_seed, 0), 1)});
  }

  const GameConfig game_cfg{k, cfg.rounds, cfg.rule, cfg.mode};
  const GreedyAdversary adversary;

  auto one_trial = [&](long long i) -> TrialResult {
    const uint64_t trial_seed = mix_seed(cfg.master_seed, static_cast<uint64_t>(i));
    std::optional<Graph> local;
    const Graph& g =
        shared ? *shared
               : local.emplace(sample_gnp({cfg.n, cfg.p, mix_seed(trial_seed, 1)}));
    const auto cop = make_cop_strategy(cop_kind, mix_seed(trial_seed, 2));
    GameOutcome out;
    if (cfg.mode == GameMode::kPhantom) {
      out = play_game(g, *cop, adversary, game_cfg);
    } else {
      const auto robber = make_embodied_robber(robber_kind, mix_seed(trial_seed, 3));
      out = play_game(g, *cop, *robber, game_cfg);
    }
    return {static_cast<uint8_t>(out.winner == Winner::kCop ? 1 : 0),
            out.rounds_used};
  };

  const auto results = parallel_map<TrialResult>(cfg.trials, cfg.threads, one_trial);

  EstimateRow row;
  row.k = k;
  row.trials = cfg.trials;
  row.seed = cfg.master_seed;
  long long round_sum = 0;
  for (const auto& r : results) {
    if (r.cop_won) {
      ++row.wins;
      round_sum += r.rounds_used;
    }
  }
  row.win_rate = static_cast<double>(row.wins) / cfg.trials;
  row.mean_rounds = row.wins ? static_cast<double>(round_sum) / row.wins : 0.0;
  return row;
}

ZetaEstimate estimate_zeta(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = validate_config(raw);

  std::map<int, EstimateRow> memo;
  auto eval = [&](int k) -> const EstimateRow& {
    auto it = memo.find(k);
    if (it == memo.end()) it = memo.emplace(k, run_trials(cfg, k)).first;
    return it->second;
  };

  int lo = cfg.k_min, hi = cfg.k_max;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (eval(mid).win_rate >= cfg.win_threshold) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  std::optional<int> zeta;
  if (eval(lo).win_rate >= cfg.win_threshold) zeta = lo;

  // The game value is monotone in k; sampled rates are only noisily so.
  // A drop beyond 3 sigma between evaluated neighbours means bisection
  // cannot be trusted: fall back to scanning the whole range.
  bool violated = false;
  const EstimateRow* prev = nullptr;
  for (const auto& [kk, row] : memo) {
    if (prev) {
      const double var = prev->win_rate * (1.0 - prev->win_rate) +
                         row.win_rate * (1.0 - row.win_rate);
      const double sigma = std::sqrt(var / cfg.trials);
      if (row.win_rate < prev->win_rate - 3.0 * sigma - 1e-12) violated = true;
    }
    prev = &row;
  }

  ZetaEstimate est;
  if (violated) {
    est.used_linear_scan = true;
    zeta.reset();
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
      if (eval(k).win_rate >= cfg.win_threshold) {
        zeta = k;
        break;
      }
    }
  }
  est.zeta_hat = zeta;
  est.rows.reserve(memo.size());
  for (const auto& [kk, row] : memo) est.rows.push_back(row);
  return est;
}

namespace {

std::string ratio_details(long long good, long long total, const std::string& what,
                          const std::string& requirement) {
  return std::to_string(good) + "/" + std::to_string(total) + " " + what + " (" +
         requirement + ")";
}

}  // namespace

VerifyReport verify_suite(const VerifyConfig& cfg) {
  if (cfg.n < 3) throw ConfigError("verify: n must be >= 3");
  if (!(cfg.p > 0.0 && cfg.p < 1.0)) throw ConfigError("verify: p must lie in (0,1)");
  if (cfg.diameter_samples < 1 || cfg.concentration_samples < 1 ||
      cfg.collision_samples < 1 || cfg.small_graph_samples < 1 ||
      cfg.certificate_graphs < 1 || cfg.certificate_pairs < 1)
    throw ConfigError("verify: sample counts must be >= 1");
  if (cfg.collision_k < 1 || cfg.collision_n < cfg.collision_k + 2)
    throw ConfigError("verify: need collision_n >= collision_k + 2");
  if (cfg.small_n < 2 || cfg.small_n > kGameSolverLimit)
    throw ConfigError("verify: small_n must lie in [2, solver limit]");
  if (cfg.threads < 1) throw ConfigError("verify: threads must be >= 1");

  const double q = 1.0 - cfg.p;
  const double rho = cfg.p * cfg.p + q * q;
  int cert_k = cfg.certificate_k;
  if (cert_k == 0)
    cert_k = std::max(1, static_cast<int>(std::lround(
                             std::log(static_cast<double>(cfg.n)) / std::log(1.0 / rho))));
  if (cert_k < 1 || cert_k > cfg.n - 1)
    throw ConfigError("verify: certificate_k must lie in [1, n-1]");

  VerifyReport rep;

  {  // 1. Sampled graphs have diameter <= 2 (the regime everything rests on).
    const uint64_t s = mix_seed(cfg.seed, 11);
    const auto flags = parallel_map<char>(
        cfg.diameter_samples, cfg.threads, [&](long long i) -> char {
          const Graph g = sample_gnp({cfg.n, cfg.p, mix_seed(s, i)});
          return g.diameter_le2() ? 1 : 0;
        });
    int good = 0;
    for (char f : flags) good += f;
    CheckResult c;
    c.name = "diameter-le2";
    c.pass = static_cast<long long>(good) * 100 >= 99LL * cfg.diameter_samples;
    c.details = ratio_details(good, cfg.diameter_samples,
                              "samples with diameter <= 2", "need >= 99%");
    rep.checks.push_back(std::move(c));
  }

  {  // 2. Degrees ~ np, codegrees ~ np^2 within the standard window.
    const uint64_t s = mix_seed(cfg.seed, 12);
    const auto flags = parallel_map<char>(
        cfg.concentration_samples, cfg.threads, [&](long long i) -> char {
          const Graph g = sample_gnp({cfg.n, cfg.p, mix_seed(s, i)});
          return check_concentration(g, cfg.p, cfg.concentration_constant).pass()
                     ? 1
                     : 0;
        });
    int good = 0;
    for (char f : flags) good += f;
    CheckResult c;
    c.name = "degree-codegree-concentration";
    c.pass = static_cast<long long>(good) * 100 >= 99LL * cfg.concentration_samples;
    c.details = ratio_details(good, cfg.concentration_samples,
                              "samples inside the concentration window",
                              "need >= 99%");
    rep.checks.push_back(std::move(c));
  }

  {  // 3. Two fixed vertices share a k-probe signature at rate rho^k.
    const uint64_t s = mix_seed(cfg.seed, 13);
    std::vector<int> probe(cfg.collision_k);
    for (int i = 0; i < cfg.collision_k; ++i) probe[i] = i + 2;
    const auto flags = parallel_map<char>(
        cfg.collision_samples, cfg.threads, [&](long long i) -> char {
          const Graph g =
              sample_gnp({cfg.collision_n, cfg.p, mix_seed(s, static_cast<uint64_t>(i))});
          return g.signature(0, probe) == g.signature(1, probe) ? 1 : 0;
        });
    long long hits = 0;
    for (char f : flags) hits += f;
    const double expected = std::pow(rho, cfg.collision_k);
    const double emp = static_cast<double>(hits) / cfg.collision_samples;
    const double sigma =
        std::sqrt(expected * (1.0 - expected) / cfg.collision_samples);
    const double z = (emp - expected) / sigma;
    CheckResult c;
    c.name = "signature-collision-rate";
    c.pass = std::abs(z) <= 4.0;
    c.details = "empirical " + format_float(emp) + " vs expected " +
                format_float(expected) + " (z = " + format_float(z) +
                ", tolerance 4 sigma)";
    rep.checks.push_back(std::move(c));
  }

  {  // 4. Eventual localization never needs more than one-round resolution.
    const uint64_t s = mix_seed(cfg.seed, 14);
    const auto flags = parallel_map<char>(
        cfg.small_graph_samples, cfg.threads, [&](long long i) -> char {
          const Graph g = sample_gnp({cfg.small_n, cfg.p, mix_seed(s, i)});
          return zeta_leq_beta_check(g) ? 1 : 0;
        });
    int good = 0;
    for (char f : flags) good += f;
    CheckResult c;
    c.name = "zeta-leq-beta";
    c.pass = good == cfg.small_graph_samples;
    c.details = ratio_details(good, cfg.small_graph_samples,
                              "small graphs with eventual <= one-round number",
                              "need all");
    rep.checks.push_back(std::move(c));
  }

  {  // 5. Undersized probes leave colliding pairs in every neighborhood.
    const uint64_t s = mix_seed(cfg.seed, 15);
    const long long total =
        static_cast<long long>(cfg.certificate_graphs) * cfg.certificate_pairs;
    const auto counts = parallel_map<int>(
        cfg.certificate_graphs, cfg.threads, [&](long long gi) -> int {
          const Graph g = sample_gnp({cfg.n, cfg.p, mix_seed(s, gi)});
          SplitMix64 rng(mix_seed(s, 1000 + gi));
          int good = 0;
          for (int j = 0; j < cfg.certificate_pairs; ++j) {
            const int u = static_cast<int>(rng.next_below(g.n()));
            std::vector<int> probe = rng.sample_subset(g.n() - 1, cert_k);
            for (int& w : probe)
              if (w >= u) ++w;  // remap {0..n-2} onto V \ {u}
            if (neighborhood_collision_count(g, u, probe) > 0) ++good;
          }
          return good;
        });
    long long good_draws = 0;
    for (int c : counts) good_draws += c;
    CheckResult c;
    c.name = "neighborhood-collision-positivity";
    c.pass = good_draws == total;
    c.details = ratio_details(good_draws, total,
                              "neighborhood draws with a colliding pair (k = " +
                                  std::to_string(cert_k) + ")",
                              "need all");
    rep.checks.push_back(std::move(c));
  }

  return rep;
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string rows_to_csv(std::span<const EstimateRow> rows) {
  std::string out = "k,trials,wins,win_rate,mean_rounds,seed\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.wins);
    out += ',';
    out += format_float(r.win_rate);
    out += ',';
    out += format_float(r.mean_rounds);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string estimate_to_json(const ZetaEstimate& est, const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  if (est.zeta_hat.has_value()) {
    j["zeta_hat"] = *est.zeta_hat;
  } else {
    j["zeta_hat"] = nullptr;
  }
  j["win_threshold"] = cfg.win_threshold;
  j["used_linear_scan"] = est.used_linear_scan;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : est.rows) {
    nlohmann::ordered_json row;
    row["k"] = r.k;
    row["trials"] = r.trials;
    row["wins"] = r.wins;
    row["win_rate"] = r.win_rate;
    row["mean_rounds"] = r.mean_rounds;
    row["seed"] = r.seed;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string verify_to_text(const VerifyReport& report) {
  std::string out;
  for (const auto& c : report.checks) {
    out += c.pass ? "[PASS] " : "[FAIL] ";
    out += c.name;
    out += ": ";
    out += c.details;
    out += '\n';
  }
  int failed = 0;
  for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
  out += failed == 0 ? "all checks passed\n"
                     : std::to_string(failed) + " check(s) failed\n";
  return out;
}

std::string verify_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["details"] = c.details;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["all_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace locgame
