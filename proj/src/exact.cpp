#include "locgame/exact.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace locgame {

namespace {

void check_solver_size(const Graph& g, int limit, const char* who) {
  if (g.n() > limit)
    throw ResourceError(std::string(who) + ": graph exceeds the solver limit");
  if (g.n() == 0) throw ParameterError(std::string(who) + ": empty graph");
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> enumerate_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Canonical signature label per vertex for one probe (0..n-1; vertices with
// equal signatures share a label).
std::vector<uint8_t> signature_labels(const Graph& g, const std::vector<int>& probe) {
  std::map<Signature, uint8_t> ids;
  std::vector<uint8_t> labels(g.n());
  for (int v = 0; v < g.n(); ++v) {
    Signature s = g.signature(v, probe);
    auto [it, fresh] = ids.try_emplace(std::move(s), static_cast<uint8_t>(ids.size()));
    labels[v] = it->second;
  }
  return labels;
}

}  // namespace

WinTable solve_win_table(const Graph& g, int k, RobberRule rule, int limit) {
  check_solver_size(g, limit, "solve_win_table");
  if (k < 1) throw ParameterError("solve_win_table: k must be >= 1");
  const int n = g.n();
  const int kk = std::min(k, n);

  std::vector<uint32_t> adj_mask(n, 0);
  for (int v = 0; v < n; ++v)
    g.neighbors(v).for_each([&](int u) { adj_mask[v] |= uint32_t{1} << u; });

  const auto probes = enumerate_subsets(n, kk);
  std::vector<std::vector<uint8_t>> labels;
  labels.reserve(probes.size());
  for (const auto& pr : probes) labels.push_back(signature_labels(g, pr));

  WinTable table;
  table.k = k;
  table.rule = rule;
  table.winning.assign(size_t{1} << n, false);
  auto& win = table.winning;
  for (int v = 0; v < n; ++v) win[uint32_t{1} << v] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
      if (win[mask] || std::popcount(mask) < 2) continue;
      for (size_t pi = 0; pi < probes.size() && !win[mask]; ++pi) {
        const auto& lab = labels[pi];
        // Gather the signature classes of this mask.
        uint32_t class_mask[1 << 4] = {};  // label ids < n <= 16... n <= 10 here
        uint32_t rest = mask;
        while (rest) {
          const int v = std::countr_zero(rest);
          rest &= rest - 1;
          class_mask[lab[v]] |= uint32_t{1} << v;
        }
        bool ok = true;
        for (int id = 0; id < n && ok; ++id) {
          const uint32_t cls = class_mask[id];
          if (cls == 0 || std::popcount(cls) == 1) continue;
          uint32_t expanded = (rule == RobberRule::kMayStay) ? cls : 0;
          uint32_t bits = cls;
          while (bits) {
            const int v = std::countr_zero(bits);
            bits &= bits - 1;
            expanded |= adj_mask[v];
          }
          // Empty expansion: the robber has no legal continuation, cop
          // wins this branch by default.
          if (expanded != 0 && !win[expanded]) ok = false;
        }
        if (ok) {
          win[mask] = true;
          changed = true;
        }
      }
    }
  }
  return table;
}

bool cop_wins(const Graph& g, int k, const VertexSet& c0, RobberRule rule,
              int limit) {
  check_solver_size(g, limit, "cop_wins");
  if (c0.capacity() != g.n()) throw ParameterError("cop_wins: candidate set mismatch");
  if (c0.empty()) throw ParameterError("cop_wins: candidate set must be non-empty");
  if (k > g.n()) throw ParameterError("cop_wins: k exceeds vertex count");
  WinTable table = solve_win_table(g, k, rule, limit);
  uint32_t mask = 0;
  c0.for_each([&](int v) { mask |= uint32_t{1} << v; });
  return table.winning[mask];
}

int localization_number(const Graph& g, RobberRule rule, int limit) {
  check_solver_size(g, limit, "localization_number");
  for (int k = 1; k <= g.n(); ++k) {
    WinTable t = solve_win_table(g, k, rule, limit);
    if (t.winning[(uint64_t{1} << g.n()) - 1]) return k;
  }
  // Unreachable: probing all n vertices separates everything (distance-0
  // self-entries are unique).
  throw ProtocolError("localization_number: no winning budget found");
}

int metric_dimension(const Graph& g, int limit) {
  if (g.n() > limit)
    throw ResourceError("metric_dimension: graph exceeds the solver limit");
  if (g.n() == 0) throw ParameterError("metric_dimension: empty graph");
  const int n = g.n();
  if (n == 1) return 0;

  // pair_sep[w] = bit row over vertex pairs (u<v) with dist(u,w) != dist(v,w).
  const int pair_count = n * (n - 1) / 2;
  const int words = (pair_count + 63) / 64;
  std::vector<std::vector<uint64_t>> pair_sep(n, std::vector<uint64_t>(words, 0));
  {
    std::vector<std::vector<int>> dist(n);
    for (int w = 0; w < n; ++w) dist[w] = g.distances_from(w);
    int pi = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++pi) {
        for (int w = 0; w < n; ++w) {
          if (dist[w][u] != dist[w][v])
            pair_sep[w][pi >> 6] |= uint64_t{1} << (pi & 63);
        }
      }
    }
  }
  auto covers_all = [&](const std::vector<int>& set) {
    for (int wi = 0; wi < words; ++wi) {
      uint64_t acc = 0;
      for (int w : set) acc |= pair_sep[w][wi];
      uint64_t want = ~uint64_t{0};
      if (wi == words - 1 && pair_count % 64 != 0)
        want >>= 64 - pair_count % 64;
      if (acc != want) return false;
    }
    return true;
  };
  for (int k = 1; k <= n; ++k) {
    for (const auto& set : enumerate_subsets(n, k)) {
      if (covers_all(set)) return k;
    }
  }
  throw ProtocolError("metric_dimension: no resolving set found");
}

bool zeta_leq_beta_check(const Graph& g) {
  return localization_number(g, RobberRule::kMayStay) <= metric_dimension(g);
}

int64_t neighborhood_collision_count(const Graph& g, int u, std::span<const int> s) {
  if (u < 0 || u >= g.n())
    throw ParameterError("neighborhood_collision_count: u out of range");
  const VertexSet& nbrs = g.neighbors(u);
  if (nbrs.empty()) return 0;
  auto classes = partition_by_signature(g, nbrs, s);
  int64_t pairs = 0;
  for (const auto& cls : classes) {
    const int64_t size = cls.members.count();
    pairs += size * (size - 1) / 2;
  }
  return pairs;
}

}  // namespace locgame
