// locgame: simulator, exact solver and numeric verifier for the
// graph localization game (cop probes distance signatures, robber hides).
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "locgame/exact.hpp"
#include "locgame/game.hpp"
#include "locgame/graph.hpp"
#include "locgame/harness.hpp"
#include "locgame/rng.hpp"
#include "locgame/strategies.hpp"
#include "locgame/theory.hpp"

namespace {

using locgame::ConfigError;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitResourceLimit = 3;

locgame::RobberRule parse_rule(const std::string& s) {
  if (s == "stay") return locgame::RobberRule::kMayStay;
  if (s == "move") return locgame::RobberRule::kMustMove;
  throw ConfigError("--rule must be 'stay' or 'move', got '" + s + "'");
}

locgame::GameMode parse_mode(const std::string& s) {
  if (s == "embodied") return locgame::GameMode::kEmbodied;
  if (s == "phantom") return locgame::GameMode::kPhantom;
  throw ConfigError("--mode must be 'embodied' or 'phantom', got '" + s + "'");
}

void check_format(const std::string& s) {
  if (s != "csv" && s != "json" && s != "text")
    throw ConfigError("--format must be 'csv', 'json' or 'text', got '" + s + "'");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

// Applies a flat `key = value` config file to a parsed subcommand: every key
// must name one of the subcommand's long options; values fill only options
// the command line left unset, so explicit flags always win. Blank lines and
// lines starting with '#' are ignored.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  const auto trim = [](const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::string where =
        " (line " + std::to_string(lineno) + " of " + path + ")";
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file: expected `key = value`" + where);
    const std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\'')))
      value = value.substr(1, value.size() - 2);
    if (key.empty() || value.empty())
      throw ConfigError("config file: empty key or value" + where);
    if (key == "config")
      throw ConfigError("config file: config files do not nest" + where);
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw ConfigError("config file: unknown key '" + key + "'" + where);
    if (opt->count() > 0) continue;  // the command line already set it
    opt->add_result(value);
    opt->run_callback();
  }
}

// Shared graph-source flags: G(n,p) sample, named fixture, or edge-list file.
struct GraphSourceArgs {
  int n = 512;
  double p = 0.5;
  uint64_t seed = 1;
  std::string fixture;
  std::string path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Vertex count for G(n,p)");
    cmd->add_option("--p", p, "Edge probability for G(n,p)");
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--fixture", fixture,
                    "Named graph instead of G(n,p): complete:N, path:N, cycle:N, "
                    "star:N, empty:N");
    cmd->add_option("--graph", path, "Edge-list file instead of G(n,p)");
  }

  bool explicit_graph() const { return !fixture.empty() || !path.empty(); }

  locgame::Graph build() const {
    if (!fixture.empty() && !path.empty())
      throw ConfigError("--fixture and --graph are mutually exclusive");
    if (!fixture.empty()) return locgame::make_fixture(fixture);
    if (!path.empty()) return locgame::load_edge_list_file(path);
    return locgame::sample_gnp({n, p, seed});
  }
};

int sig_entry(int d) { return d == locgame::kUnreachable ? -1 : d; }

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  GraphSourceArgs src;
  std::string out;
  std::string config;
};

int run_gen(const GenArgs& a) {
  const locgame::Graph g = a.src.build();
  std::ostringstream os;
  locgame::save_edge_list(g, os);
  write_output(a.out, os.str());
  return kExitOk;
}

// --------------------------------------------------------------- play ----

struct PlayArgs {
  GraphSourceArgs src;
  int k = 1;
  int rounds = 30;
  std::string rule = "stay";
  std::string mode = "phantom";
  std::string cop = "random-set";
  std::string robber;  // default depends on mode
  std::string format = "text";
  std::string out;
  std::string config;
};

int run_play(const PlayArgs& a) {
  check_format(a.format);
  const locgame::Graph g = a.src.build();
  locgame::GameConfig cfg;
  cfg.k = a.k;
  cfg.max_rounds = a.rounds;
  cfg.rule = parse_rule(a.rule);
  cfg.mode = parse_mode(a.mode);
  if (cfg.k < 1) throw ConfigError("--k must be >= 1");
  if (cfg.k > g.n()) throw ConfigError("--k exceeds the vertex count");
  if (cfg.max_rounds < 1) throw ConfigError("--rounds must be >= 1");

  // The master seed plays the role of a single trial seed: stream 2 feeds
  // the cop, stream 3 the robber (stream 1 would be the graph's, but the
  // graph here is built directly from --seed / fixture / file).
  const auto cop_kind = locgame::parse_strategy_kind(a.cop);
  const auto cop = locgame::make_cop_strategy(cop_kind, locgame::mix_seed(a.src.seed, 2));

  std::string robber_name = a.robber;
  if (robber_name.empty())
    robber_name = cfg.mode == locgame::GameMode::kPhantom ? "greedy-adversary"
                                                          : "random-walker";
  const auto robber_kind = locgame::parse_strategy_kind(robber_name);

  locgame::GameOutcome outcome;
  if (cfg.mode == locgame::GameMode::kPhantom) {
    const auto adversary = locgame::make_adversary(robber_kind);
    outcome = locgame::play_game(g, *cop, *adversary, cfg);
  } else {
    const auto walker =
        locgame::make_embodied_robber(robber_kind, locgame::mix_seed(a.src.seed, 3));
    outcome = locgame::play_game(g, *cop, *walker, cfg);
  }

  const bool cop_won = outcome.winner == locgame::Winner::kCop;
  std::string text;
  if (a.format == "json") {
    ordered_json j;
    j["winner"] = cop_won ? "cop" : "robber";
    j["rounds_used"] = outcome.rounds_used;
    if (outcome.located_vertex.has_value())
      j["located_vertex"] = *outcome.located_vertex;
    else
      j["located_vertex"] = nullptr;
    ordered_json trace = ordered_json::array();
    for (const auto& rec : outcome.trace) {
      ordered_json r;
      r["round"] = rec.round;
      r["probe"] = rec.probe;
      ordered_json obs = ordered_json::array();
      for (int d : rec.observed.dists) obs.push_back(sig_entry(d));
      r["observed"] = std::move(obs);
      r["filtered_size"] = rec.filtered_size;
      r["expanded_size"] = rec.expanded_size;
      trace.push_back(std::move(r));
    }
    j["trace"] = std::move(trace);
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& rec : outcome.trace) {
      os << "round=" << rec.round << " probe=[";
      for (size_t i = 0; i < rec.probe.size(); ++i)
        os << (i ? " " : "") << rec.probe[i];
      os << "] observed=[";
      for (size_t i = 0; i < rec.observed.dists.size(); ++i)
        os << (i ? " " : "") << sig_entry(rec.observed.dists[i]);
      os << "] filtered_size=" << rec.filtered_size
         << " expanded_size=" << rec.expanded_size << "\n";
    }
    os << "winner=" << (cop_won ? "cop" : "robber")
       << " rounds_used=" << outcome.rounds_used << " located_vertex="
       << (outcome.located_vertex ? std::to_string(*outcome.located_vertex)
                                  : std::string("none"))
       << "\n";
    text = os.str();
  }
  write_output(a.out, text);
  return kExitOk;
}

// ----------------------------------------------------------- estimate ----

struct EstimateArgs {
  GraphSourceArgs src;
  int trials = 200;
  int k = 0;  // when set, run this single k instead of a search
  int k_min = 1;
  int k_max = 0;
  int rounds = 30;
  double win_threshold = 0.95;
  std::string rule = "stay";
  std::string mode = "phantom";
  std::string cop = "random-set";
  std::string robber;
  bool shared_graph = false;
  int threads = 1;
  std::string format = "csv";
  std::string out;
  std::string config;
};

locgame::ExperimentConfig to_experiment_config(const EstimateArgs& a) {
  locgame::ExperimentConfig cfg;
  cfg.n = a.src.n;
  cfg.p = a.src.p;
  cfg.master_seed = a.src.seed;
  cfg.trials = a.trials;
  cfg.k_min = a.k_min;
  cfg.k_max = a.k_max;
  cfg.rounds = a.rounds;
  cfg.win_threshold = a.win_threshold;
  cfg.rule = parse_rule(a.rule);
  cfg.mode = parse_mode(a.mode);
  cfg.cop = a.cop;
  cfg.robber = a.robber;
  if (cfg.robber.empty())
    cfg.robber = cfg.mode == locgame::GameMode::kPhantom ? "greedy-adversary"
                                                         : "random-walker";
  cfg.fresh_graph_per_trial = !a.shared_graph;
  cfg.threads = a.threads;
  if (a.src.explicit_graph()) {
    cfg.fixed_graph = a.src.build();
    cfg.fresh_graph_per_trial = false;
  }
  return cfg;
}

int run_estimate(const EstimateArgs& a) {
  check_format(a.format);
  locgame::ExperimentConfig cfg = to_experiment_config(a);

  locgame::ZetaEstimate est;
  if (a.k > 0) {
    est.rows.push_back(locgame::run_trials(cfg, a.k));
    if (est.rows[0].win_rate >= cfg.win_threshold) est.zeta_hat = a.k;
  } else {
    est = locgame::estimate_zeta(cfg);
  }

  std::string payload;
  if (a.format == "json") {
    payload = locgame::estimate_to_json(est, locgame::validate_config(cfg));
  } else {
    payload = locgame::rows_to_csv(est.rows);
  }
  write_output(a.out, payload);
  if (!a.out.empty()) {
    // Brief summary on stdout; the machine-readable payload went to a file.
    if (est.zeta_hat.has_value())
      std::cout << "zeta_hat = " << *est.zeta_hat << "\n";
    else
      std::cout << "zeta_hat = none (no k in range reached the threshold)\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------- exact ----

struct ExactArgs {
  GraphSourceArgs src;
  bool n_given = false;
  int k = 0;  // optional: also report cop_wins for this budget
  std::string rule = "stay";
  std::string format = "text";
  std::string out;
  std::string config;
};

int run_exact(const ExactArgs& a) {
  check_format(a.format);
  GraphSourceArgs src = a.src;
  // The global default n=512 belongs to the sampling commands; exhaustive
  // solving gets a desk-sized default unless the user asked for a size.
  if (!src.explicit_graph() && !a.n_given) src.n = 8;
  const locgame::Graph g = src.build();
  const locgame::RobberRule rule = parse_rule(a.rule);

  const int zeta = locgame::localization_number(g, rule);
  const int beta = locgame::metric_dimension(g);
  const locgame::WinTable table = locgame::solve_win_table(g, zeta, rule);
  const long long states = (1LL << g.n()) - 1;  // non-empty candidate sets

  std::optional<bool> k_wins;
  if (a.k > 0)
    k_wins = locgame::cop_wins(g, a.k, locgame::VertexSet::full(g.n()), rule);

  std::string text;
  if (a.format == "json") {
    ordered_json j;
    j["n"] = g.n();
    j["edges"] = g.edge_count();
    j["rule"] = a.rule;
    j["zeta"] = zeta;
    j["beta"] = beta;
    j["win_table_k"] = table.k;
    j["winning_states"] = table.winning_count();
    j["candidate_states"] = states;
    if (k_wins.has_value()) {
      j["k"] = a.k;
      j["cop_wins_at_k"] = *k_wins;
    }
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "n = " << g.n() << "\n";
    os << "edges = " << g.edge_count() << "\n";
    os << "rule = " << a.rule << "\n";
    os << "zeta = " << zeta << "\n";
    os << "beta = " << beta << "\n";
    os << "win_table: k = " << table.k << ", winning candidate sets = "
       << table.winning_count() << "/" << states << "\n";
    if (k_wins.has_value())
      os << "cop_wins(k = " << a.k << ") = " << (*k_wins ? "true" : "false")
         << "\n";
    text = os.str();
  }
  write_output(a.out, text);
  return kExitOk;
}

// ------------------------------------------------------------- theory ----

struct TheoryArgs {
  double n = 512;
  double p = 0.5;
  double omega = 0.0;  // 0 -> default ln ln n
  double c = 0.0;      // 0 -> default from derive_params
  std::string format = "text";
  std::string out;
  std::string config;
};

int run_theory(const TheoryArgs& a) {
  check_format(a.format);
  std::optional<double> omega;
  if (a.omega != 0.0) omega = a.omega;
  const locgame::TheoryParams tp = locgame::derive_params(a.n, a.p, omega);
  const double c = a.c != 0.0 ? a.c : tp.c;
  const locgame::BoundWindow w = locgame::zeta_window(tp, c);

  // Certificate quantities only exist in their own p-range; report NaN
  // outside it rather than failing the whole table.
  locgame::CertificateQuantities cq;
  bool have_cq = true;
  try {
    cq = locgame::certificate_quantities(a.n, a.p);
  } catch (const locgame::ParameterError&) {
    have_cq = false;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    cq = {nan, nan, nan, nan, nan, nan, nan};
  }

  const std::pair<const char*, double> fields[] = {
      {"n", tp.n},
      {"p", tp.p},
      {"q", tp.q},
      {"rho", tp.rho},
      {"eta", tp.eta},
      {"epsilon", cq.epsilon},
      {"c_max", locgame::c_max(a.n, a.p)},
      {"c", c},
      {"k_lower", w.lower},
      {"k_upper", w.upper},
      {"beta_lower", w.beta_lower},
      {"beta_upper", w.beta_upper},
      {"mu_lower", cq.mu_lower},
      {"delta_upper", cq.delta_upper},
      {"pair_corr_upper", cq.pair_corr_upper},
      {"suen_exponent", cq.suen_exponent},
      {"union_exponent", cq.union_exponent},
  };

  std::string text;
  if (a.format == "json") {
    ordered_json j;
    for (const auto& [name, value] : fields) j[name] = value;
    j["lower_clamped"] = w.lower_clamped;
    j["certificate_range"] = have_cq;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& [name, value] : fields)
      os << name << " = " << locgame::format_float(value) << "\n";
    os << "lower_clamped = " << (w.lower_clamped ? "true" : "false") << "\n";
    os << "certificate_range = " << (have_cq ? "true" : "false") << "\n";
    text = os.str();
  }
  write_output(a.out, text);
  return kExitOk;
}

// ------------------------------------------------------------- verify ----

struct VerifyArgs {
  locgame::VerifyConfig cfg;
  std::string format = "text";
  std::string out;
  std::string config;
};

int run_verify(const VerifyArgs& a) {
  check_format(a.format);
  const locgame::VerifyReport report = locgame::verify_suite(a.cfg);
  const std::string text = a.format == "json" ? locgame::verify_to_json(report)
                                              : locgame::verify_to_text(report);
  write_output(a.out, text);
  if (!a.out.empty())
    std::cout << (report.all_pass() ? "all checks passed\n"
                                    : "some checks failed\n");
  return report.all_pass() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"localization-game simulator, exact solver and numeric verifier"};
  app.require_subcommand(1);
  const auto add_config = [](CLI::App* cmd, std::string& dest) {
    cmd->add_option("--config", dest,
                    "Flat key = value file supplying defaults (flags win)");
  };

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Sample a graph and write its edge list");
  add_config(gen, gen_args.config);
  gen_args.src.attach(gen);
  gen->add_option("--out", gen_args.out, "Output path (default stdout)");

  PlayArgs play_args;
  auto* play = app.add_subcommand("play", "Play one traced game");
  add_config(play, play_args.config);
  play_args.src.attach(play);
  play->add_option("--k", play_args.k, "Probe budget per round");
  play->add_option("--rounds", play_args.rounds, "Round limit");
  play->add_option("--rule", play_args.rule, "Robber rule: stay | move");
  play->add_option("--mode", play_args.mode, "Game mode: embodied | phantom");
  play->add_option("--cop", play_args.cop, "Cop strategy name");
  play->add_option("--robber", play_args.robber, "Robber strategy name");
  play->add_option("--format", play_args.format, "Output format: text | json");
  play->add_option("--out", play_args.out, "Output path (default stdout)");

  EstimateArgs est_args;
  auto* est = app.add_subcommand(
      "estimate", "Monte Carlo win rates across k; estimates the threshold");
  add_config(est, est_args.config);
  est_args.src.attach(est);
  est->add_option("--trials", est_args.trials, "Trials per k");
  est->add_option("--k", est_args.k, "Evaluate a single probe budget only");
  est->add_option("--k-min", est_args.k_min, "Smallest k to search");
  est->add_option("--k-max", est_args.k_max, "Largest k to search (0 = auto)");
  est->add_option("--rounds", est_args.rounds, "Round limit per game");
  est->add_option("--win-threshold", est_args.win_threshold,
                  "Win-rate threshold defining zeta_hat");
  est->add_option("--rule", est_args.rule, "Robber rule: stay | move");
  est->add_option("--mode", est_args.mode, "Game mode: embodied | phantom");
  est->add_option("--cop", est_args.cop, "Cop strategy name");
  est->add_option("--robber", est_args.robber, "Robber strategy name");
  est->add_flag("--shared-graph", est_args.shared_graph,
                "Reuse one sampled graph for every trial");
  est->add_option("--threads", est_args.threads, "Worker threads");
  est->add_option("--format", est_args.format, "Output format: csv | json");
  est->add_option("--out", est_args.out, "Output path (default stdout)");

  ExactArgs exact_args;
  auto* exact = app.add_subcommand(
      "exact", "Exhaustive localization number and metric dimension");
  add_config(exact, exact_args.config);
  exact_args.src.attach(exact);
  exact->add_option("--k", exact_args.k, "Also decide cop_wins at this budget");
  exact->add_option("--rule", exact_args.rule, "Robber rule: stay | move");
  exact->add_option("--format", exact_args.format, "Output format: text | json");
  exact->add_option("--out", exact_args.out, "Output path (default stdout)");

  TheoryArgs theory_args;
  auto* theory = app.add_subcommand(
      "theory", "Closed-form parameter and bound table");
  add_config(theory, theory_args.config);
  theory->add_option("--n", theory_args.n, "Scale parameter (real-valued)");
  theory->add_option("--p", theory_args.p, "Edge probability");
  theory->add_option("--omega", theory_args.omega,
                     "Auxiliary slow function value (default ln ln n)");
  theory->add_option("--c", theory_args.c,
                     "Slack constant (default 0.9 * min(c_max, 1))");
  theory->add_option("--format", theory_args.format, "Output format: text | json");
  theory->add_option("--out", theory_args.out, "Output path (default stdout)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Run the numeric certificate suite");
  add_config(verify, verify_args.config);
  verify->add_option("--n", verify_args.cfg.n, "Graph size for the samples");
  verify->add_option("--p", verify_args.cfg.p, "Edge probability");
  verify->add_option("--seed", verify_args.cfg.seed, "Master seed");
  verify->add_option("--diameter-samples", verify_args.cfg.diameter_samples,
                     "Samples for the diameter check");
  verify->add_option("--concentration-samples",
                     verify_args.cfg.concentration_samples,
                     "Samples for the concentration check");
  verify->add_option("--concentration-constant",
                     verify_args.cfg.concentration_constant,
                     "Window constant for the concentration check");
  verify->add_option("--collision-n", verify_args.cfg.collision_n,
                     "Graph size for the collision-rate check");
  verify->add_option("--collision-k", verify_args.cfg.collision_k,
                     "Probe count for the collision-rate check");
  verify->add_option("--collision-samples", verify_args.cfg.collision_samples,
                     "Samples for the collision-rate check");
  verify->add_option("--small-graph-samples", verify_args.cfg.small_graph_samples,
                     "Samples for the zeta <= beta check");
  verify->add_option("--small-n", verify_args.cfg.small_n,
                     "Graph size for the zeta <= beta check");
  verify->add_option("--certificate-graphs", verify_args.cfg.certificate_graphs,
                     "Graphs for the collision-positivity check");
  verify->add_option("--certificate-pairs", verify_args.cfg.certificate_pairs,
                     "(u, S) draws per graph");
  verify->add_option("--certificate-k", verify_args.cfg.certificate_k,
                     "Probe size for the positivity check (0 = auto)");
  verify->add_option("--threads", verify_args.cfg.threads, "Worker threads");
  verify->add_option("--format", verify_args.format, "Output format: text | json");
  verify->add_option("--out", verify_args.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  try {
    if (*gen) {
      apply_config_file(gen, gen_args.config);
      return run_gen(gen_args);
    }
    if (*play) {
      apply_config_file(play, play_args.config);
      return run_play(play_args);
    }
    if (*est) {
      apply_config_file(est, est_args.config);
      return run_estimate(est_args);
    }
    if (*exact) {
      apply_config_file(exact, exact_args.config);
      exact_args.n_given = exact->count("--n") > 0;
      return run_exact(exact_args);
    }
    if (*theory) {
      apply_config_file(theory, theory_args.config);
      return run_theory(theory_args);
    }
    if (*verify) {
      apply_config_file(verify, verify_args.config);
      return run_verify(verify_args);
    }
    std::cerr << "no subcommand given\n";
    return kExitConfigError;
  } catch (const locgame::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const locgame::ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
