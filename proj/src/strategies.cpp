#include "locgame/strategies.hpp"

#include <algorithm>

#include "locgame/rng.hpp"

namespace locgame {

StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "random-set") return StrategyKind::kRandomSet;
  if (name == "greedy-split") return StrategyKind::kGreedySplit;
  if (name == "greedy-adversary") return StrategyKind::kGreedyAdversary;
  if (name == "random-walker") return StrategyKind::kRandomWalker;
  throw ConfigError("unknown strategy name: '" + std::string(name) + "'");
}

std::string strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kRandomSet: return "random-set";
    case StrategyKind::kGreedySplit: return "greedy-split";
    case StrategyKind::kGreedyAdversary: return "greedy-adversary";
    case StrategyKind::kRandomWalker: return "random-walker";
  }
  throw ParameterError("strategy_name: bad kind");
}

std::vector<int> RandomSetCop::choose_probe(const Graph& g,
                                            const KnowledgeState& state,
                                            int k) const {
  if (k > g.n()) throw ParameterError("random-set: k exceeds vertex count");
  if (k < 0) throw ParameterError("random-set: k must be non-negative");
  SplitMix64 rng(mix_seed(seed_, static_cast<uint64_t>(state.round) + 1));
  return rng.sample_subset(g.n(), k);
}

std::vector<int> GreedySplitCop::choose_probe(const Graph& g,
                                              const KnowledgeState& state,
                                              int k) const {
  if (k > g.n()) throw ParameterError("greedy-split: k exceeds vertex count");
  // Working partition of the candidate set; refined by true signatures after
  // every pick so scores reflect what the probe so far already separates.
  std::vector<int> probe;
  VertexSet chosen(g.n());
  std::vector<SignatureClass> classes =
      partition_by_signature(g, state.candidates, std::span<const int>{});
  for (int pick = 0; pick < k; ++pick) {
    long long best_score = 0;
    int best_w = -1;
    for (int w = 0; w < g.n(); ++w) {
      if (chosen.test(w)) continue;
      long long score = 0;
      for (const auto& cls : classes) {
        const long long size = cls.members.count();
        if (size < 2) continue;
        const long long hit = VertexSet::intersection_count(cls.members, g.neighbors(w));
        score += hit * (size - hit);
      }
      if (score > best_score) {
        best_score = score;
        best_w = w;
      }
    }
    if (best_w < 0) break;  // nothing left to separate
    probe.push_back(best_w);
    chosen.set(best_w);
    // Refine by the actual signature column of the pick (not just adjacency),
    // so later scores see exactly the classes the engine will see.
    std::vector<SignatureClass> next;
    const int single[] = {best_w};
    for (auto& cls : classes) {
      if (cls.members.count() < 2) {
        next.push_back(std::move(cls));
        continue;
      }
      auto split = partition_by_signature(g, cls.members, single);
      for (auto& part : split) next.push_back(std::move(part));
    }
    classes = std::move(next);
  }
  return probe;
}

int GreedyAdversary::choose_class(const Graph& g,
                                  const std::vector<SignatureClass>& classes,
                                  RobberRule rule) const {
  if (classes.empty()) throw ParameterError("greedy-adversary: no classes");
  // Prefer non-singleton classes; among eligible ones maximize expansion
  // size, then class size. Classes arrive ordered by min member id, so the
  // first maximum realizes the smallest-min-id tie-break.
  bool any_big = false;
  for (const auto& cls : classes)
    if (cls.members.count() >= 2) { any_big = true; break; }

  int best = -1;
  long long best_exp = -1, best_size = -1;
  for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
    const long long size = classes[i].members.count();
    if (any_big && size < 2) continue;
    const long long exp = expand_candidates(g, classes[i].members, rule).count();
    if (exp > best_exp || (exp == best_exp && size > best_size)) {
      best = i;
      best_exp = exp;
      best_size = size;
    }
  }
  return best;
}

int RandomWalkerRobber::initial_position(const Graph& g) const {
  if (g.n() == 0) throw ParameterError("random-walker: empty graph");
  SplitMix64 rng(mix_seed(seed_, 0));
  return static_cast<int>(rng.next_below(static_cast<uint64_t>(g.n())));
}

std::optional<int> RandomWalkerRobber::move(const Graph& g, int position,
                                            RobberRule rule, int round) const {
  std::vector<int> options = g.neighbors(position).to_vector();
  if (rule == RobberRule::kMayStay) {
    options.push_back(position);
    std::sort(options.begin(), options.end());
  }
  if (options.empty()) return std::nullopt;
  SplitMix64 rng(mix_seed(seed_, static_cast<uint64_t>(round)));
  return options[rng.next_below(options.size())];
}

std::unique_ptr<CopStrategy> make_cop_strategy(StrategyKind kind, uint64_t seed) {
  switch (kind) {
    case StrategyKind::kRandomSet: return std::make_unique<RandomSetCop>(seed);
    case StrategyKind::kGreedySplit: return std::make_unique<GreedySplitCop>();
    default:
      throw ConfigError("strategy '" + strategy_name(kind) + "' is not a cop");
  }
}

std::unique_ptr<PhantomAdversary> make_adversary(StrategyKind kind) {
  if (kind == StrategyKind::kGreedyAdversary)
    return std::make_unique<GreedyAdversary>();
  throw ConfigError("strategy '" + strategy_name(kind) +
                    "' is not a phantom adversary");
}

std::unique_ptr<EmbodiedRobber> make_embodied_robber(StrategyKind kind,
                                                     uint64_t seed) {
  if (kind == StrategyKind::kRandomWalker)
    return std::make_unique<RandomWalkerRobber>(seed);
  throw ConfigError("strategy '" + strategy_name(kind) +
                    "' is not an embodied robber");
}

}  // namespace locgame
