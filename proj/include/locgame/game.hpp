#pragma once

#include <optional>
#include <span>
#include <vector>

#include "locgame/graph.hpp"

namespace locgame {

// Whether the robber may remain in place between rounds. MAY_STAY is the
// conservative default: the candidate set expands to R union N(R) rather
// than N(R) alone, so any strategy that wins here also wins the other game.
enum class RobberRule { kMayStay, kMustMove };

// PHANTOM: no actual robber position; an adversary picks, every round, which
// signature class the observation came from (worst case over all robber
// behaviors). EMBODIED: a robber token occupies a concrete vertex.
enum class GameMode { kEmbodied, kPhantom };

enum class Winner { kCop, kRobber };

struct GameConfig {
  int k = 1;           // probe budget per round
  int max_rounds = 30; // generous; the theory needs only a constant
  RobberRule rule = RobberRule::kMayStay;
  GameMode mode = GameMode::kPhantom;
};

// The cop's information: the set of vertices consistent with all
// observations so far, and the number of completed rounds.
struct KnowledgeState {
  VertexSet candidates;
  int round = 0;
};

struct SignatureClass {
  Signature sig;
  VertexSet members;
};

struct RoundRecord {
  int round = 0;  // 1-based
  std::vector<int> probe;
  Signature observed;
  int filtered_size = 0;
  int expanded_size = 0;
};

struct GameOutcome {
  Winner winner = Winner::kRobber;
  int rounds_used = 0;
  // Set on a cop win except in one corner: MUST_MOVE with every remaining
  // candidate isolated and |R| >= 2 ends the game (no legal robber move)
  // without naming a vertex.
  std::optional<int> located_vertex;
  std::vector<RoundRecord> trace;
};

// Splits candidates into maximal groups indistinguishable by the probe.
// Classes are ordered by smallest member id. Requires candidates non-empty.
std::vector<SignatureClass> partition_by_signature(const Graph& g,
                                                   const VertexSet& candidates,
                                                   std::span<const int> probe);

// R = members of candidates whose signature under probe equals observed.
// An empty result means the observation was inconsistent -> ProtocolError.
VertexSet filter_candidates(const Graph& g, const VertexSet& candidates,
                            std::span<const int> probe, const Signature& observed);

// Possible robber locations one move after being somewhere in r:
// MAY_STAY -> r union N(r); MUST_MOVE -> N(r) (may be empty if all of r is
// isolated, signalling the robber has no legal move).
VertexSet expand_candidates(const Graph& g, const VertexSet& r, RobberRule rule);

class CopStrategy {
 public:
  virtual ~CopStrategy() = default;
  // Emits an ordered probe list, size <= k, distinct in-range vertex ids.
  virtual std::vector<int> choose_probe(const Graph& g, const KnowledgeState& state,
                                        int k) const = 0;
};

class PhantomAdversary {
 public:
  virtual ~PhantomAdversary() = default;
  // Returns an index into classes (which is non-empty).
  virtual int choose_class(const Graph& g, const std::vector<SignatureClass>& classes,
                           RobberRule rule) const = 0;
};

class EmbodiedRobber {
 public:
  virtual ~EmbodiedRobber() = default;
  virtual int initial_position(const Graph& g) const = 0;
  // nullopt when there is no legal move (isolated vertex under MUST_MOVE);
  // the engine treats that as capture in place.
  virtual std::optional<int> move(const Graph& g, int position, RobberRule rule,
                                  int round) const = 0;
};

// One full game. The cop probes, the engine filters the candidate set by
// the observed signature, checks for a win (|R| = 1), then the robber
// responds and the candidate set expands. Runs at most cfg.max_rounds.
GameOutcome play_game(const Graph& g, const CopStrategy& cop,
                      const PhantomAdversary& adversary, const GameConfig& cfg);
GameOutcome play_game(const Graph& g, const CopStrategy& cop,
                      const EmbodiedRobber& robber, const GameConfig& cfg);

}  // namespace locgame
