#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "locgame/game.hpp"

namespace locgame {

enum class StrategyKind { kRandomSet, kGreedySplit, kGreedyAdversary, kRandomWalker };

// Accepted names: "random-set", "greedy-split", "greedy-adversary",
// "random-walker". Unknown names -> ConfigError.
StrategyKind parse_strategy_kind(std::string_view name);
std::string strategy_name(StrategyKind kind);

// Cop probing a fresh uniformly random k-subset of V every round,
// independent of the candidate set. Deterministic given (seed, round):
// round r uses the stream SplitMix64(mix_seed(seed, r)).
class RandomSetCop final : public CopStrategy {
 public:
  explicit RandomSetCop(uint64_t seed) : seed_(seed) {}
  std::vector<int> choose_probe(const Graph& g, const KnowledgeState& state,
                                int k) const override;

 private:
  uint64_t seed_;
};

// Cop that greedily assembles a probe: each pick maximizes the number of
// currently-indistinguishable candidate pairs (u,v) separated by adjacency
// to the pick (exactly one of u, v adjacent). Ties break to the smallest
// vertex id; stops early once no pick separates anything.
class GreedySplitCop final : public CopStrategy {
 public:
  std::vector<int> choose_probe(const Graph& g, const KnowledgeState& state,
                                int k) const override;
};

// Worst-case phantom robber: picks the signature class whose expansion is
// largest; ties -> larger class, then smaller min vertex id. Never picks a
// singleton when a larger class exists.
class GreedyAdversary final : public PhantomAdversary {
 public:
  int choose_class(const Graph& g, const std::vector<SignatureClass>& classes,
                   RobberRule rule) const override;
};

// Embodied robber walking uniformly at random: MUST_MOVE -> uniform
// neighbor; MAY_STAY -> uniform over the closed neighborhood. Initial
// position uniform over V. Round r uses SplitMix64(mix_seed(seed, r));
// the initial position uses stream index 0.
class RandomWalkerRobber final : public EmbodiedRobber {
 public:
  explicit RandomWalkerRobber(uint64_t seed) : seed_(seed) {}
  int initial_position(const Graph& g) const override;
  std::optional<int> move(const Graph& g, int position, RobberRule rule,
                          int round) const override;

 private:
  uint64_t seed_;
};

// Factories keyed by kind; throw ConfigError when the kind does not fit the
// requested role (e.g. a robber name passed where a cop is needed).
std::unique_ptr<CopStrategy> make_cop_strategy(StrategyKind kind, uint64_t seed);
std::unique_ptr<PhantomAdversary> make_adversary(StrategyKind kind);
std::unique_ptr<EmbodiedRobber> make_embodied_robber(StrategyKind kind, uint64_t seed);

}  // namespace locgame
