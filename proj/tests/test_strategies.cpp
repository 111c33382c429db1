#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "locgame/game.hpp"
#include "locgame/rng.hpp"
#include "locgame/strategies.hpp"

using namespace locgame;

namespace {

VertexSet make_set(int n, std::initializer_list<int> members) {
  VertexSet s(n);
  for (int v : members) s.set(v);
  return s;
}

int median_of(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("strategy names parse and round-trip") {
  CHECK(parse_strategy_kind("random-set") == StrategyKind::kRandomSet);
  CHECK(parse_strategy_kind("greedy-split") == StrategyKind::kGreedySplit);
  CHECK(parse_strategy_kind("greedy-adversary") == StrategyKind::kGreedyAdversary);
  CHECK(parse_strategy_kind("random-walker") == StrategyKind::kRandomWalker);
  CHECK_THROWS_AS(parse_strategy_kind("clever-cop"), ConfigError);
  CHECK_THROWS_AS(parse_strategy_kind(""), ConfigError);

  for (StrategyKind kind :
       {StrategyKind::kRandomSet, StrategyKind::kGreedySplit,
        StrategyKind::kGreedyAdversary, StrategyKind::kRandomWalker})
    CHECK(parse_strategy_kind(strategy_name(kind)) == kind);
}

TEST_CASE("factories enforce the role of each strategy") {
  CHECK(make_cop_strategy(StrategyKind::kRandomSet, 1) != nullptr);
  CHECK(make_cop_strategy(StrategyKind::kGreedySplit, 1) != nullptr);
  CHECK_THROWS_AS(make_cop_strategy(StrategyKind::kGreedyAdversary, 1), ConfigError);
  CHECK_THROWS_AS(make_cop_strategy(StrategyKind::kRandomWalker, 1), ConfigError);

  CHECK(make_adversary(StrategyKind::kGreedyAdversary) != nullptr);
  CHECK_THROWS_AS(make_adversary(StrategyKind::kRandomSet), ConfigError);

  CHECK(make_embodied_robber(StrategyKind::kRandomWalker, 1) != nullptr);
  CHECK_THROWS_AS(make_embodied_robber(StrategyKind::kGreedyAdversary, 1),
                  ConfigError);
}

TEST_CASE("random-set cop: determinism, obliviousness, and budget") {
  const Graph g = sample_gnp({64, 0.5, 3});
  const RandomSetCop cop(42);

  const KnowledgeState s0{VertexSet::full(64), 0};
  const auto a = cop.choose_probe(g, s0, 10);
  const auto b = cop.choose_probe(g, s0, 10);
  CHECK(a == b);  // same seed, same round
  REQUIRE(a.size() == 10);
  for (size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i] < a[i + 1]);

  const KnowledgeState s1{VertexSet::full(64), 1};
  CHECK(cop.choose_probe(g, s1, 10) != a);  // fresh subset next round

  // Oblivious: the candidate set does not influence the probe.
  const KnowledgeState narrow{make_set(64, {5, 6}), 0};
  CHECK(cop.choose_probe(g, narrow, 10) == a);

  const RandomSetCop other(43);
  CHECK(other.choose_probe(g, s0, 10) != a);  // different seed stream

  CHECK_THROWS_AS(cop.choose_probe(g, s0, 65), ParameterError);  // k > n
}

TEST_CASE("random-set cop probes each vertex with frequency k/n") {
  const Graph g = sample_gnp({512, 0.5, 1});
  const RandomSetCop cop(7);
  const int rounds = 1000, k = 20, n = 512;
  std::vector<int> count(n, 0);
  for (int r = 0; r < rounds; ++r) {
    const KnowledgeState state{VertexSet::full(n), r};
    for (int v : cop.choose_probe(g, state, k)) ++count[v];
  }
  const double mean = rounds * static_cast<double>(k) / n;
  const double sigma = std::sqrt(rounds * (k / 512.0) * (1.0 - k / 512.0));
  for (int v = 0; v < n; ++v) CHECK(std::abs(count[v] - mean) <= 4.0 * sigma);
}

TEST_CASE("probing all n vertices wins any graph in one round") {
  const GreedyAdversary adv;
  for (const Graph& g :
       {Graph::star(4), Graph::path(5), sample_gnp({16, 0.4, 2})}) {
    const RandomSetCop cop(9);
    GameConfig cfg;
    cfg.k = g.n();
    const GameOutcome out = play_game(g, cop, adv, cfg);
    CHECK(out.winner == Winner::kCop);
    CHECK(out.rounds_used == 1);
  }
}

TEST_CASE("greedy-split cop separates a pair using an adjacency witness") {
  const Graph p3 = Graph::path(3);
  const GreedySplitCop cop;
  // Candidates {0,1}: every vertex separates the pair (scores tie at 1),
  // so the tie-break picks vertex 0; its signature column splits {0,1}.
  const KnowledgeState state{make_set(3, {0, 1}), 0};
  const auto probe = cop.choose_probe(p3, state, 1);
  REQUIRE(probe == std::vector<int>{0});
  const auto classes = partition_by_signature(p3, state.candidates, probe);
  CHECK(classes.size() == 2);
}

TEST_CASE("greedy-split cop on K_3 probes vertex 0 by tie-break") {
  const Graph k3 = Graph::complete(3);
  const GreedySplitCop cop;
  const KnowledgeState state{VertexSet::full(3), 0};
  const auto probe = cop.choose_probe(k3, state, 1);
  REQUIRE(probe == std::vector<int>{0});
  const auto classes = partition_by_signature(k3, state.candidates, probe);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].members == make_set(3, {0}));
  CHECK(classes[1].members == make_set(3, {1, 2}));
}

TEST_CASE("greedy-split cop stops once nothing is left to separate") {
  const Graph k3 = Graph::complete(3);
  const GreedySplitCop cop;
  // After probing 0 and 1 all classes are singletons; the third slot of the
  // budget is left unused.
  const KnowledgeState state{VertexSet::full(3), 0};
  CHECK(cop.choose_probe(k3, state, 3) == std::vector<int>{0, 1});

  // A singleton candidate set needs no probe at all; the engine then sees
  // one singleton class and ends the game.
  const KnowledgeState won{make_set(3, {2}), 0};
  CHECK(cop.choose_probe(k3, won, 3).empty());
  const auto classes =
      partition_by_signature(k3, won.candidates, std::vector<int>{});
  CHECK(classes.size() == 1);
  CHECK(classes[0].members.count() == 1);

  CHECK_THROWS_AS(cop.choose_probe(k3, state, 4), ParameterError);  // k > n
}

TEST_CASE("greedy-split cop wins embodied games on mid-size graphs") {
  int wins = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = sample_gnp({32, 0.5, seed});
    const GreedySplitCop cop;
    const RandomWalkerRobber robber(seed + 50);
    GameConfig cfg;
    cfg.k = 8;
    cfg.max_rounds = 20;
    cfg.mode = GameMode::kEmbodied;
    if (play_game(g, cop, robber, cfg).winner == Winner::kCop) ++wins;
  }
  CHECK(wins >= 9);
}

TEST_CASE("greedy adversary prefers the class that keeps the game alive") {
  const GreedyAdversary adv;

  // K_3, classes {0} and {1,2}: the singleton would lose instantly.
  const Graph k3 = Graph::complete(3);
  const int probe0[] = {0};
  const auto k3_classes = partition_by_signature(k3, VertexSet::full(3), probe0);
  REQUIRE(k3_classes.size() == 2);
  CHECK(adv.choose_class(k3, k3_classes, RobberRule::kMayStay) == 1);

  // Star with candidates {center, leaf1, leaf2} probed at leaf3: the center
  // class is a singleton, so the leaf pair is chosen even though the
  // center's own expansion would be larger.
  const Graph star = Graph::star(3);
  const int probe3[] = {3};
  const auto star_classes =
      partition_by_signature(star, make_set(4, {0, 1, 2}), probe3);
  REQUIRE(star_classes.size() == 2);
  CHECK(star_classes[0].members == make_set(4, {0}));
  CHECK(star_classes[1].members == make_set(4, {1, 2}));
  CHECK(adv.choose_class(star, star_classes, RobberRule::kMayStay) == 1);

  // All singletons: any in-range class is acceptable.
  const Graph p3 = Graph::path(3);
  const int probe_p[] = {0};
  const auto p3_classes = partition_by_signature(p3, VertexSet::full(3), probe_p);
  REQUIRE(p3_classes.size() == 3);
  const int pick = adv.choose_class(p3, p3_classes, RobberRule::kMayStay);
  CHECK(pick >= 0);
  CHECK(pick < 3);
}

TEST_CASE("greedy adversary tie-breaks by size then smallest member") {
  // Two disjoint triangles {0,1,2} and {3,4,5}.
  const Graph g(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  const GreedyAdversary adv;

  // Candidates {1,2,3,4,5} probed at 0: classes {1,2} (distance 1) and
  // {3,4,5} (unreachable). Expansions are 3 vertices each; the larger
  // class wins the tie.
  const int probe0[] = {0};
  const auto classes1 = partition_by_signature(g, make_set(6, {1, 2, 3, 4, 5}), probe0);
  REQUIRE(classes1.size() == 2);
  CHECK(classes1[1].members == make_set(6, {3, 4, 5}));
  CHECK(adv.choose_class(g, classes1, RobberRule::kMayStay) == 1);

  // Candidates {1,2,3,4}: classes {1,2} and {3,4}, same size, same
  // expansion size 3; first class (smallest min id) wins.
  const auto classes2 = partition_by_signature(g, make_set(6, {1, 2, 3, 4}), probe0);
  REQUIRE(classes2.size() == 2);
  CHECK(adv.choose_class(g, classes2, RobberRule::kMayStay) == 0);
}

TEST_CASE("greedy adversary always realizes the worst eligible expansion") {
  const GreedyAdversary adv;
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    const Graph g = sample_gnp({20, 0.3, seed});
    SplitMix64 rng(seed);
    for (RobberRule rule : {RobberRule::kMayStay, RobberRule::kMustMove}) {
      const std::vector<int> probe = rng.sample_subset(20, 3);
      const auto classes = partition_by_signature(g, VertexSet::full(20), probe);
      const int chosen = adv.choose_class(g, classes, rule);
      REQUIRE(chosen >= 0);
      REQUIRE(chosen < static_cast<int>(classes.size()));

      // Eligible classes: non-singletons when any exist (a singleton pick
      // is an instant loss regardless of its expansion).
      bool any_big = false;
      for (const auto& cls : classes)
        if (cls.members.count() >= 2) any_big = true;
      long long best = -1;
      for (const auto& cls : classes) {
        if (any_big && cls.members.count() < 2) continue;
        best = std::max(best,
                        (long long)expand_candidates(g, cls.members, rule).count());
      }
      if (any_big) CHECK(classes[chosen].members.count() >= 2);
      CHECK((long long)expand_candidates(g, classes[chosen].members, rule).count() ==
            best);
    }
  }
}

TEST_CASE("random walker: forced moves and stuck positions") {
  const Graph k2 = Graph::complete(2);
  const RandomWalkerRobber r(5);
  for (int round = 1; round <= 20; ++round)
    CHECK(r.move(k2, 0, RobberRule::kMustMove, round) == 1);

  const Graph e3 = Graph::empty(3);
  for (int round = 1; round <= 5; ++round) {
    CHECK(r.move(e3, 1, RobberRule::kMayStay, round) == 1);  // stays put
    CHECK_FALSE(r.move(e3, 1, RobberRule::kMustMove, round).has_value());
  }
}

TEST_CASE("random walker is deterministic per seed and uniform over options") {
  const Graph c4 = Graph::cycle(4);
  const RandomWalkerRobber a(11), b(11), c(12);
  CHECK(a.initial_position(c4) == b.initial_position(c4));
  for (int round = 1; round <= 50; ++round)
    CHECK(a.move(c4, 0, RobberRule::kMayStay, round) ==
          b.move(c4, 0, RobberRule::kMayStay, round));
  bool differs = c.initial_position(c4) != a.initial_position(c4);
  for (int round = 1; round <= 50 && !differs; ++round)
    differs = a.move(c4, 0, RobberRule::kMayStay, round) !=
              c.move(c4, 0, RobberRule::kMayStay, round);
  CHECK(differs);

  // MUST_MOVE from vertex 0 of C_4: neighbors 1 and 3, each with rate 1/2.
  {
    const int steps = 10000;
    int to1 = 0;
    for (int round = 1; round <= steps; ++round) {
      const auto m = a.move(c4, 0, RobberRule::kMustMove, round);
      REQUIRE(m.has_value());
      REQUIRE((m == 1 || m == 3));
      if (m == 1) ++to1;
    }
    const double sigma = std::sqrt(steps * 0.25);
    CHECK(std::abs(to1 - steps * 0.5) <= 4.0 * sigma);
  }

  // MAY_STAY: three options, each with rate 1/3.
  {
    const int steps = 10000;
    int counts[4] = {0, 0, 0, 0};
    for (int round = 1; round <= steps; ++round) {
      const auto m = a.move(c4, 0, RobberRule::kMayStay, round);
      REQUIRE(m.has_value());
      ++counts[*m];
    }
    CHECK(counts[2] == 0);  // not a neighbor, not the position
    const double mean = steps / 3.0;
    const double sigma = std::sqrt(steps * (1.0 / 3.0) * (2.0 / 3.0));
    for (int v : {0, 1, 3}) CHECK(std::abs(counts[v] - mean) <= 4.0 * sigma);
  }

  // Initial position is uniform over V across seeds.
  {
    const Graph g = Graph::path(10);
    int counts[10] = {};
    const int samples = 10000;
    for (int s = 0; s < samples; ++s)
      ++counts[RandomWalkerRobber(static_cast<uint64_t>(s)).initial_position(g)];
    const double mean = samples / 10.0;
    const double sigma = std::sqrt(samples * 0.1 * 0.9);
    for (int v = 0; v < 10; ++v) CHECK(std::abs(counts[v] - mean) <= 4.0 * sigma);
  }
}

TEST_CASE("identical cop seed gives identical probe sequences across robbers") {
  const Graph g = sample_gnp({30, 0.5, 6});
  GameConfig cfg;
  cfg.k = 2;  // small budget so games run several rounds
  cfg.max_rounds = 12;
  cfg.mode = GameMode::kEmbodied;
  const RandomSetCop cop(99);
  const GameOutcome o1 = play_game(g, cop, RandomWalkerRobber(1), cfg);
  const GameOutcome o2 = play_game(g, cop, RandomWalkerRobber(2), cfg);
  const size_t common = std::min(o1.trace.size(), o2.trace.size());
  REQUIRE(common >= 1);
  for (size_t i = 0; i < common; ++i)
    CHECK(o1.trace[i].probe == o2.trace[i].probe);
}

TEST_CASE("median candidate contraction is monotone under the random cop") {
  // 300 phantom trials on fresh G(100, 1/2) with k=5 (collision rate
  // 2^-5): the median filtered size over still-running games shrinks
  // round over round. Everything is seeded, so the medians are frozen.
  const int trials = 300;
  std::vector<std::vector<int>> filtered_by_round;
  for (uint64_t t = 0; t < trials; ++t) {
    const Graph g = sample_gnp({100, 0.5, 1000 + t});
    const RandomSetCop cop(2000 + t);
    const GreedyAdversary adv;
    GameConfig cfg;
    cfg.k = 5;
    cfg.max_rounds = 30;
    const GameOutcome out = play_game(g, cop, adv, cfg);
    for (size_t r = 0; r < out.trace.size(); ++r) {
      if (filtered_by_round.size() <= r) filtered_by_round.resize(r + 1);
      filtered_by_round[r].push_back(out.trace[r].filtered_size);
    }
  }
  REQUIRE(filtered_by_round.size() >= 2);
  int prev = median_of(filtered_by_round[0]);
  for (size_t r = 1; r < filtered_by_round.size(); ++r) {
    if (filtered_by_round[r].size() < 50) break;  // too few games left
    const int med = median_of(filtered_by_round[r]);
    CHECK(med <= prev);
    prev = med;
  }
}
