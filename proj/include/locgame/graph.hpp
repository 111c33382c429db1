#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locgame/bits.hpp"
#include "locgame/errors.hpp"

namespace locgame {

// Distance value for vertices in different components. Chosen as INT_MAX so
// it sorts above every finite distance; serialized as -1 in JSON output.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct GnpParams {
  int n = 0;        // >= 2
  double p = 0.0;   // strictly inside (0,1)
  uint64_t seed = 0;
};

// Distances from one vertex to an ordered probe list, in probe order.
struct Signature {
  std::vector<int> dists;
  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

// Simple undirected graph on vertices {0,...,n-1}, immutable after
// construction. Adjacency is stored as one bit row per vertex.
class Graph {
 public:
  Graph(int n, const std::vector<std::pair<int, int>>& edges);
  Graph(int n, std::vector<VertexSet> adjacency_rows);

  static Graph empty(int n);
  static Graph complete(int n);
  static Graph path(int n);
  static Graph cycle(int n);
  static Graph star(int leaves);  // vertex 0 is the center

  int n() const { return n_; }
  int edge_count() const { return m_; }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    return adj_[u].test(v);
  }
  const VertexSet& neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
  }
  int degree(int v) const { return neighbors(v).count(); }

  // Number of common neighbors of two distinct vertices.
  int codegree(int u, int v) const;

  // True when every pair of distinct vertices is adjacent or shares a
  // neighbor; decided once at construction.
  bool diameter_le2() const { return diam_le2_; }

  bool diameter_at_most(int d) const;

  // BFS distances from source; kUnreachable for other components.
  std::vector<int> distances_from(int source) const;

  // Distance vector from v to the probes, in probe order. On graphs with
  // diameter <= 2 this reduces to 0 / adjacent / 2 and is computed with
  // bit tests; otherwise it falls back to BFS.
  Signature signature(int v, std::span<const int> probes) const;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw ParameterError("Graph: vertex id out of range");
  }
  void finish_construction();

  int n_ = 0;
  int m_ = 0;
  bool diam_le2_ = false;
  std::vector<VertexSet> adj_;
};

// Erdos-Renyi sample: every pair {u,v}, u < v, visited in lexicographic
// order, one uniform draw each. Identical (n, p, seed) gives an identical
// graph on every platform.
Graph sample_gnp(const GnpParams& params);

struct ConcentrationReport {
  bool all_degrees_pass = false;
  bool all_codegrees_pass = false;
  double worst_degree_deviation = 0.0;    // units of sqrt(n p log n)
  double worst_codegree_deviation = 0.0;  // units of sqrt(n p^2 log n)
  double constant_used = 0.0;
  bool pass() const { return all_degrees_pass && all_codegrees_pass; }
};

// Checks every degree against n p +- C sqrt(n p log n) and every codegree
// against n p^2 +- C sqrt(n p^2 log n). p may be 1 (deterministic graphs);
// the window scale degenerates at p = 0.
ConcentrationReport check_concentration(const Graph& g, double p, double constant = 3.0);

// Edge-list text format: header "n m", then m lines "u v" with u < v,
// 0-indexed. Duplicate edges, self-loops and out-of-range ids are rejected.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void save_edge_list(const Graph& g, std::ostream& out);

// Builds a named fixture; accepted forms: "complete:N", "path:N",
// "cycle:N", "star:N" (N leaves), "empty:N".
Graph make_fixture(const std::string& desc);

}  // namespace locgame
