#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "locgame/game.hpp"
#include "locgame/graph.hpp"

namespace locgame {

// Hard size walls for the exhaustive searches: the game solver costs about
// C(n,k) * 2^n per sweep, the resolving-set search about 2^n bit rows.
inline constexpr int kGameSolverLimit = 10;
inline constexpr int kResolvingSolverLimit = 16;

// Exhaustive game value for one probe budget: winning[m] is true when the
// cop can force a win from the candidate set encoded by bitmask m.
// Least-fixed-point semantics: infinite play is a robber win.
struct WinTable {
  int k = 0;
  RobberRule rule = RobberRule::kMayStay;
  std::vector<bool> winning;  // indexed by candidate bitmask, size 2^n

  int winning_count() const {
    int c = 0;
    for (bool b : winning) c += b ? 1 : 0;
    return c;
  }
};

// Computes the full win table by round-robin iteration until fixpoint.
// Rule: a mask M is winning iff some probe W of size min(k, n) makes every
// signature class R of M satisfy |R| = 1, or expand(R) empty (no legal
// robber continuation), or expand(R) already winning. Searching only
// size-k probes is sound: extra probe vertices never remove information.
WinTable solve_win_table(const Graph& g, int k, RobberRule rule,
                         int limit = kGameSolverLimit);

bool cop_wins(const Graph& g, int k, const VertexSet& c0, RobberRule rule,
              int limit = kGameSolverLimit);

// Smallest k with cop_wins from the full vertex set; always <= n.
int localization_number(const Graph& g, RobberRule rule = RobberRule::kMayStay,
                        int limit = kGameSolverLimit);

// Smallest probe set that gives every vertex a distinct signature (a win in
// one round). Disconnected graphs are handled with the UNREACHABLE distance.
int metric_dimension(const Graph& g, int limit = kResolvingSolverLimit);

// The one-round number can never beat the eventual number.
bool zeta_leq_beta_check(const Graph& g);

// Number of unordered pairs inside N(u) sharing a signature under s.
// A positive count certifies that probing s cannot pin the robber down to
// u's neighborhood this round.
int64_t neighborhood_collision_count(const Graph& g, int u, std::span<const int> s);

}  // namespace locgame
