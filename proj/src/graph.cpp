#include "locgame/graph.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "locgame/rng.hpp"

namespace locgame {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 0) throw ParameterError("Graph: n must be non-negative");
  adj_.assign(n, VertexSet(n));
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParameterError("Graph: edge endpoint out of range");
    if (u == v) throw ParameterError("Graph: self-loops are not allowed");
    if (adj_[u].test(v)) throw ParameterError("Graph: duplicate edge");
    adj_[u].set(v);
    adj_[v].set(u);
  }
  finish_construction();
}

Graph::Graph(int n, std::vector<VertexSet> adjacency_rows)
    : n_(n), adj_(std::move(adjacency_rows)) {
  if (n < 0) throw ParameterError("Graph: n must be non-negative");
  if (static_cast<int>(adj_.size()) != n)
    throw ParameterError("Graph: adjacency row count != n");
  for (int u = 0; u < n; ++u) {
    if (adj_[u].capacity() != n)
      throw ParameterError("Graph: adjacency row capacity != n");
    if (adj_[u].test(u)) throw ParameterError("Graph: self-loops are not allowed");
  }
  for (int u = 0; u < n; ++u) {
    adj_[u].for_each([&](int v) {
      if (!adj_[v].test(u)) throw ParameterError("Graph: adjacency not symmetric");
    });
  }
  finish_construction();
}

void Graph::finish_construction() {
  int total = 0;
  for (const auto& row : adj_) total += row.count();
  m_ = total / 2;

  // diameter <= 2  <=>  every non-adjacent pair shares a neighbor.
  diam_le2_ = true;
  for (int u = 0; u < n_ && diam_le2_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adj_[u].test(v)) continue;
      if (!adj_[u].intersects(adj_[v])) {
        diam_le2_ = false;
        break;
      }
    }
  }
  if (n_ <= 1) diam_le2_ = true;
}

Graph Graph::empty(int n) { return Graph(n, std::vector<std::pair<int, int>>{}); }

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph(n, edges);
}

Graph Graph::cycle(int n) {
  if (n < 3) throw ParameterError("cycle: need n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, edges);
}

Graph Graph::star(int leaves) {
  if (leaves < 0) throw ParameterError("star: leaves must be non-negative");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

int Graph::codegree(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ParameterError("codegree: vertices must be distinct");
  return VertexSet::intersection_count(adj_[u], adj_[v]);
}

std::vector<int> Graph::distances_from(int source) const {
  check_vertex(source);
  std::vector<int> dist(n_, kUnreachable);
  dist[source] = 0;
  // Frontier-by-frontier BFS over bit rows.
  VertexSet visited(n_);
  visited.set(source);
  VertexSet frontier(n_);
  frontier.set(source);
  int d = 0;
  while (!frontier.empty()) {
    VertexSet next(n_);
    frontier.for_each([&](int u) { next |= adj_[u]; });
    next.remove(visited);
    ++d;
    next.for_each([&](int v) { dist[v] = d; });
    visited |= next;
    frontier = std::move(next);
  }
  return dist;
}

bool Graph::diameter_at_most(int d) const {
  if (d < 0) throw ParameterError("diameter_at_most: d must be non-negative");
  if (d >= 2) {
    // Cheap cases first; beyond 2, fall back to BFS from every vertex.
    if (diam_le2_) return true;
    if (d == 2) return false;
  }
  for (int v = 0; v < n_; ++v) {
    for (int x : distances_from(v)) {
      if (x == kUnreachable || x > d) return false;
    }
  }
  return true;
}

Signature Graph::signature(int v, std::span<const int> probes) const {
  check_vertex(v);
  Signature sig;
  sig.dists.reserve(probes.size());
  if (diam_le2_) {
    for (int w : probes) {
      check_vertex(w);
      sig.dists.push_back(w == v ? 0 : adj_[v].test(w) ? 1 : 2);
    }
    return sig;
  }
  for (int w : probes) {
    check_vertex(w);
    sig.dists.push_back(distances_from(w)[v]);
  }
  return sig;
}

Graph sample_gnp(const GnpParams& params) {
  if (params.n < 2) throw ParameterError("sample_gnp: n must be >= 2");
  if (!(params.p > 0.0 && params.p < 1.0))
    throw ParameterError("sample_gnp: p must lie strictly in (0,1)");
  SplitMix64 rng(params.seed);
  std::vector<VertexSet> rows(params.n, VertexSet(params.n));
  for (int u = 0; u < params.n; ++u) {
    for (int v = u + 1; v < params.n; ++v) {
      if (rng.next_double() < params.p) {
        rows[u].set(v);
        rows[v].set(u);
      }
    }
  }
  return Graph(params.n, std::move(rows));
}

ConcentrationReport check_concentration(const Graph& g, double p, double constant) {
  if (!(p > 0.0 && p <= 1.0))
    throw ParameterError("check_concentration: p must lie in (0,1]");
  if (!(constant > 0.0))
    throw ParameterError("check_concentration: constant must be positive");
  const int n = g.n();
  if (n < 2) throw ParameterError("check_concentration: need n >= 2");
  const double logn = std::log(static_cast<double>(n));
  ConcentrationReport rep;
  rep.constant_used = constant;

  const double deg_scale = std::sqrt(n * p * logn);
  double worst_deg = 0.0;
  for (int v = 0; v < n; ++v)
    worst_deg = std::max(worst_deg, std::abs(g.degree(v) - n * p) / deg_scale);

  const double codeg_scale = std::sqrt(n * p * p * logn);
  double worst_codeg = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      worst_codeg =
          std::max(worst_codeg, std::abs(g.codegree(u, v) - n * p * p) / codeg_scale);

  rep.worst_degree_deviation = worst_deg;
  rep.worst_codegree_deviation = worst_codeg;
  rep.all_degrees_pass = worst_deg <= constant;
  rep.all_codegrees_pass = worst_codeg <= constant;
  return rep;
}

Graph load_edge_list(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw ConfigError("edge list: missing 'n m' header");
  if (n < 0 || m < 0) throw ConfigError("edge list: negative header values");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw ConfigError("edge list: truncated edge section");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ConfigError("edge list: endpoint out of range");
    if (u >= v) throw ConfigError("edge list: edges must satisfy u < v");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  try {
    return Graph(static_cast<int>(n), edges);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("edge list: ") + e.what());
  }
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file: " + path);
  return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.n(); ++u) {
    g.neighbors(u).for_each([&](int v) {
      if (u < v) out << u << ' ' << v << '\n';
    });
  }
}

Graph make_fixture(const std::string& desc) {
  auto colon = desc.find(':');
  if (colon == std::string::npos)
    throw ConfigError("fixture: expected NAME:SIZE, got '" + desc + "'");
  const std::string name = desc.substr(0, colon);
  int size = 0;
  try {
    size_t used = 0;
    size = std::stoi(desc.substr(colon + 1), &used);
    if (used != desc.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ConfigError("fixture: bad size in '" + desc + "'");
  }
  try {
    if (name == "complete") return Graph::complete(size);
    if (name == "path") return Graph::path(size);
    if (name == "cycle") return Graph::cycle(size);
    if (name == "star") return Graph::star(size);
    if (name == "empty") return Graph::empty(size);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("fixture: ") + e.what());
  }
  throw ConfigError("fixture: unknown name '" + name + "'");
}

}  // namespace locgame
