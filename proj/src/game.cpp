#include "locgame/game.hpp"

#include <algorithm>
#include <map>

namespace locgame {

namespace {

void check_probe(const Graph& g, std::span<const int> probe, int k) {
  if (static_cast<int>(probe.size()) > k)
    throw ProtocolError("probe exceeds the per-round budget k");
  VertexSet seen(g.n());
  for (int w : probe) {
    if (w < 0 || w >= g.n()) throw ProtocolError("probe vertex out of range");
    if (seen.test(w)) throw ProtocolError("probe contains a duplicate vertex");
    seen.set(w);
  }
}

}  // namespace

std::vector<SignatureClass> partition_by_signature(const Graph& g,
                                                   const VertexSet& candidates,
                                                   std::span<const int> probe) {
  if (candidates.capacity() != g.n())
    throw ParameterError("partition_by_signature: candidate set size mismatch");
  if (candidates.empty())
    throw ParameterError("partition_by_signature: candidates must be non-empty");

  // Successive refinement: split every class by the distance column of each
  // probe vertex in turn. Distances are bucketed in ascending order, so the
  // final class order is lexicographic in signature.
  std::vector<SignatureClass> classes;
  classes.push_back({Signature{}, candidates});
  const bool fast = g.diameter_le2();
  for (int w : probe) {
    if (w < 0 || w >= g.n())
      throw ParameterError("partition_by_signature: probe vertex out of range");
    std::vector<int> column;
    if (!fast) {
      column = g.distances_from(w);
    }
    std::vector<SignatureClass> next;
    next.reserve(classes.size() * 2);
    for (auto& cls : classes) {
      if (fast) {
        VertexSet at0(g.n());
        if (cls.members.test(w)) at0.set(w);
        VertexSet at1 = cls.members;
        at1 &= g.neighbors(w);
        VertexSet at2 = cls.members;
        at2.remove(at1);
        if (!at0.empty()) at2.remove(at0);
        const std::pair<int, const VertexSet*> buckets[] = {
            {0, &at0}, {1, &at1}, {2, &at2}};
        for (auto [d, set] : buckets) {
          if (set->empty()) continue;
          SignatureClass out{cls.sig, *set};
          out.sig.dists.push_back(d);
          next.push_back(std::move(out));
        }
      } else {
        std::map<int, VertexSet> buckets;  // ordered: ascending distance
        cls.members.for_each([&](int v) {
          auto [it, fresh] = buckets.try_emplace(column[v], g.n());
          it->second.set(v);
        });
        for (auto& [d, set] : buckets) {
          SignatureClass out{cls.sig, std::move(set)};
          out.sig.dists.push_back(d);
          next.push_back(std::move(out));
        }
      }
    }
    classes = std::move(next);
  }
  std::sort(classes.begin(), classes.end(),
            [](const SignatureClass& a, const SignatureClass& b) {
              return a.members.min_element() < b.members.min_element();
            });
  return classes;
}

VertexSet filter_candidates(const Graph& g, const VertexSet& candidates,
                            std::span<const int> probe, const Signature& observed) {
  if (candidates.capacity() != g.n())
    throw ParameterError("filter_candidates: candidate set size mismatch");
  if (observed.dists.size() != probe.size())
    throw ProtocolError("filter_candidates: observation length != probe length");

  VertexSet result = candidates;
  const bool fast = g.diameter_le2();
  for (size_t i = 0; i < probe.size(); ++i) {
    const int w = probe[i];
    if (w < 0 || w >= g.n())
      throw ParameterError("filter_candidates: probe vertex out of range");
    const int d = observed.dists[i];
    if (fast) {
      switch (d) {
        case 0: {
          VertexSet only(g.n());
          only.set(w);
          result &= only;
          break;
        }
        case 1:
          result &= g.neighbors(w);
          break;
        case 2:
          result.remove(g.neighbors(w));
          result.reset(w);
          break;
        default:
          result.clear();  // impossible distance on a diameter-<=2 graph
      }
    } else {
      const std::vector<int> column = g.distances_from(w);
      VertexSet keep(g.n());
      result.for_each([&](int v) {
        if (column[v] == d) keep.set(v);
      });
      result = std::move(keep);
    }
    if (result.empty())
      throw ProtocolError("filter_candidates: observation inconsistent with candidates");
  }
  return result;
}

VertexSet expand_candidates(const Graph& g, const VertexSet& r, RobberRule rule) {
  if (r.capacity() != g.n())
    throw ParameterError("expand_candidates: candidate set size mismatch");
  if (r.empty()) throw ParameterError("expand_candidates: r must be non-empty");
  VertexSet out(g.n());
  r.for_each([&](int v) { out |= g.neighbors(v); });
  if (rule == RobberRule::kMayStay) out |= r;
  return out;
}

namespace {

struct StepResult {
  bool game_over = false;
  GameOutcome outcome;
};

// Shared per-round bookkeeping after the observation is fixed: filter,
// win checks, expansion. Returns game_over when the round ended the game.
StepResult settle_round(const Graph& g, KnowledgeState& state, int round,
                        std::vector<int> probe, const Signature& observed,
                        const GameConfig& cfg, std::vector<RoundRecord>& trace) {
  VertexSet r = filter_candidates(g, state.candidates, probe, observed);
  RoundRecord rec;
  rec.round = round;
  rec.probe = std::move(probe);
  rec.observed = observed;
  rec.filtered_size = r.count();

  StepResult res;
  if (rec.filtered_size == 1) {
    rec.expanded_size = 1;
    trace.push_back(std::move(rec));
    res.game_over = true;
    res.outcome.winner = Winner::kCop;
    res.outcome.rounds_used = round;
    res.outcome.located_vertex = r.min_element();
    res.outcome.trace = std::move(trace);
    return res;
  }
  VertexSet expanded = expand_candidates(g, r, cfg.rule);
  if (expanded.empty()) {
    // MUST_MOVE with every candidate isolated: the robber has no legal
    // move anywhere in R, so the game cannot continue. Counted as a cop
    // win by default, but no single vertex is identified.
    rec.expanded_size = 0;
    trace.push_back(std::move(rec));
    res.game_over = true;
    res.outcome.winner = Winner::kCop;
    res.outcome.rounds_used = round;
    res.outcome.located_vertex = std::nullopt;
    res.outcome.trace = std::move(trace);
    return res;
  }
  rec.expanded_size = expanded.count();
  trace.push_back(std::move(rec));
  state.candidates = std::move(expanded);
  state.round = round;
  return res;
}

}  // namespace

GameOutcome play_game(const Graph& g, const CopStrategy& cop,
                      const PhantomAdversary& adversary, const GameConfig& cfg) {
  if (g.n() == 0) throw ParameterError("play_game: graph must be non-empty");
  if (cfg.k < 1 || cfg.max_rounds < 1)
    throw ParameterError("play_game: k and max_rounds must be >= 1");

  KnowledgeState state{VertexSet::full(g.n()), 0};
  std::vector<RoundRecord> trace;
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    std::vector<int> probe = cop.choose_probe(g, state, cfg.k);
    check_probe(g, probe, cfg.k);
    auto classes = partition_by_signature(g, state.candidates, probe);
    const int idx = adversary.choose_class(g, classes, cfg.rule);
    if (idx < 0 || idx >= static_cast<int>(classes.size()))
      throw ProtocolError("adversary chose a class index out of range");
    StepResult step = settle_round(g, state, round, std::move(probe),
                                   classes[idx].sig, cfg, trace);
    if (step.game_over) return std::move(step.outcome);
  }
  GameOutcome out;
  out.winner = Winner::kRobber;
  out.rounds_used = cfg.max_rounds;
  out.trace = std::move(trace);
  return out;
}

GameOutcome play_game(const Graph& g, const CopStrategy& cop,
                      const EmbodiedRobber& robber, const GameConfig& cfg) {
  if (g.n() == 0) throw ParameterError("play_game: graph must be non-empty");
  if (cfg.k < 1 || cfg.max_rounds < 1)
    throw ParameterError("play_game: k and max_rounds must be >= 1");

  int pos = robber.initial_position(g);
  if (pos < 0 || pos >= g.n())
    throw ProtocolError("robber initial position out of range");

  KnowledgeState state{VertexSet::full(g.n()), 0};
  std::vector<RoundRecord> trace;
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    std::vector<int> probe = cop.choose_probe(g, state, cfg.k);
    check_probe(g, probe, cfg.k);
    const Signature observed = g.signature(pos, probe);

    // Soundness: the true position always survives its own signature.
    VertexSet r = filter_candidates(g, state.candidates, probe, observed);
    if (!r.test(pos))
      throw ProtocolError("engine invariant violated: true position filtered out");

    RoundRecord rec;
    rec.round = round;
    rec.probe = probe;
    rec.observed = observed;
    rec.filtered_size = r.count();
    if (rec.filtered_size == 1) {
      rec.expanded_size = 1;
      trace.push_back(std::move(rec));
      GameOutcome out;
      out.winner = Winner::kCop;
      out.rounds_used = round;
      out.located_vertex = pos;
      out.trace = std::move(trace);
      return out;
    }

    std::optional<int> next = robber.move(g, pos, cfg.rule, round);
    if (!next.has_value()) {
      // No legal move: captured in place.
      rec.expanded_size = 0;
      trace.push_back(std::move(rec));
      GameOutcome out;
      out.winner = Winner::kCop;
      out.rounds_used = round;
      out.located_vertex = pos;
      out.trace = std::move(trace);
      return out;
    }
    const int np = *next;
    if (np < 0 || np >= g.n()) throw ProtocolError("robber moved out of range");
    const bool legal =
        (cfg.rule == RobberRule::kMayStay && np == pos) || g.has_edge(pos, np);
    if (!legal) throw ProtocolError("robber made an illegal move");
    pos = np;

    VertexSet expanded = expand_candidates(g, r, cfg.rule);
    rec.expanded_size = expanded.count();
    trace.push_back(std::move(rec));
    state.candidates = std::move(expanded);
    state.round = round;
  }
  GameOutcome out;
  out.winner = Winner::kRobber;
  out.rounds_used = cfg.max_rounds;
  out.trace = std::move(trace);
  return out;
}

}  // namespace locgame
