#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "locgame/graph.hpp"

using namespace locgame;

namespace {

// Independent BFS reference: plain adjacency lists + std::queue, no bitsets.
std::vector<int> naive_bfs(const Graph& g, int src) {
  const int n = g.n();
  std::vector<std::vector<int>> adj(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && g.has_edge(u, v)) adj[u].push_back(v);
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  for (int& d : dist)
    if (d < 0) d = kUnreachable;
  return dist;
}

bool same_graph(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
  for (int v = 0; v < a.n(); ++v)
    if (!(a.neighbors(v) == b.neighbors(v))) return false;
  return true;
}

}  // namespace

TEST_CASE("named builders produce the expected graphs") {
  const Graph k4 = Graph::complete(4);
  CHECK(k4.n() == 4);
  CHECK(k4.edge_count() == 6);
  for (int u = 0; u < 4; ++u) {
    CHECK(k4.degree(u) == 3);
    for (int v = 0; v < 4; ++v)
      if (u != v) CHECK(k4.has_edge(u, v));
  }

  const Graph p5 = Graph::path(5);
  CHECK(p5.edge_count() == 4);
  CHECK(p5.degree(0) == 1);
  CHECK(p5.degree(2) == 2);
  CHECK(p5.has_edge(1, 2));
  CHECK_FALSE(p5.has_edge(0, 2));

  const Graph c6 = Graph::cycle(6);
  CHECK(c6.n() == 6);
  CHECK(c6.edge_count() == 6);
  CHECK(c6.has_edge(0, 5));
  for (int v = 0; v < 6; ++v) CHECK(c6.degree(v) == 2);

  const Graph star3 = Graph::star(3);
  CHECK(star3.n() == 4);
  CHECK(star3.edge_count() == 3);
  CHECK(star3.degree(0) == 3);
  CHECK(star3.degree(1) == 1);
  CHECK_FALSE(star3.has_edge(1, 2));

  const Graph e3 = Graph::empty(3);
  CHECK(e3.edge_count() == 0);

  CHECK(Graph::path(1).n() == 1);
  CHECK(Graph::star(0).n() == 1);
  CHECK_THROWS_AS(Graph::cycle(2), ParameterError);
  CHECK_THROWS_AS(Graph::star(-1), ParameterError);
}

TEST_CASE("graph constructors validate their input") {
  CHECK_THROWS_AS(Graph(-1, std::vector<std::pair<int, int>>{}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ParameterError);           // self-loop
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);   // duplicate
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {0, 1}}), ParameterError);   // duplicate
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);           // out of range
  CHECK_THROWS_AS(Graph(3, {{-1, 2}}), ParameterError);          // out of range

  // Adjacency-row constructor: row count, row capacity, diagonal, symmetry.
  {
    std::vector<VertexSet> rows(2, VertexSet(3));
    CHECK_THROWS_AS(Graph(3, rows), ParameterError);
  }
  {
    std::vector<VertexSet> rows(3, VertexSet(4));
    CHECK_THROWS_AS(Graph(3, rows), ParameterError);
  }
  {
    std::vector<VertexSet> rows(3, VertexSet(3));
    rows[1].set(1);
    CHECK_THROWS_AS(Graph(3, rows), ParameterError);
  }
  {
    std::vector<VertexSet> rows(3, VertexSet(3));
    rows[0].set(1);  // 1 -> 0 missing
    CHECK_THROWS_AS(Graph(3, rows), ParameterError);
  }
  {
    std::vector<VertexSet> rows(3, VertexSet(3));
    rows[0].set(1);
    rows[1].set(0);
    const Graph g(3, rows);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
  }
}

TEST_CASE("sampled graphs satisfy structural invariants") {
  const Graph g = sample_gnp({200, 0.3, 5});
  CHECK(g.n() == 200);
  int degree_sum = 0;
  for (int u = 0; u < g.n(); ++u) {
    CHECK_FALSE(g.has_edge(u, u));
    degree_sum += g.degree(u);
    for (int v = u + 1; v < g.n(); ++v) CHECK(g.has_edge(u, v) == g.has_edge(v, u));
  }
  CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("sample_gnp is deterministic in its parameters") {
  const Graph a = sample_gnp({5, 0.5, 42});
  const Graph b = sample_gnp({5, 0.5, 42});
  CHECK(same_graph(a, b));

  const Graph c = sample_gnp({2, 0.999, 1});
  const Graph d = sample_gnp({2, 0.999, 1});
  CHECK(same_graph(c, d));
  CHECK((c.edge_count() == 0 || c.edge_count() == 1));

  // Different seeds give different 50-vertex graphs (equal only with
  // probability 2^-1225).
  CHECK_FALSE(same_graph(sample_gnp({50, 0.5, 1}), sample_gnp({50, 0.5, 2})));

  CHECK_THROWS_AS(sample_gnp({1, 0.5, 0}), ParameterError);
  CHECK_THROWS_AS(sample_gnp({5, 0.0, 0}), ParameterError);
  CHECK_THROWS_AS(sample_gnp({5, 1.0, 0}), ParameterError);
  CHECK_THROWS_AS(sample_gnp({5, -0.1, 0}), ParameterError);
  CHECK_THROWS_AS(sample_gnp({5, 1.1, 0}), ParameterError);
}

TEST_CASE("sample_gnp edge count matches binomial concentration") {
  const int n = 2000;
  const double p = 0.5;
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs * p;
  const double sigma = std::sqrt(pairs * p * (1 - p));
  const Graph g = sample_gnp({n, p, 11});
  CHECK(std::abs(g.edge_count() - mean) <= 4.0 * sigma);
}

TEST_CASE("sample_gnp per-pair marginals and independence across pairs") {
  // Marginal: the {3,7} indicator over fresh samples is Bernoulli(p).
  {
    const int samples = 20000;
    const double p = 0.3;
    int hits = 0;
    for (int s = 0; s < samples; ++s)
      if (sample_gnp({10, p, static_cast<uint64_t>(s)}).has_edge(3, 7)) ++hits;
    const double sigma = std::sqrt(samples * p * (1 - p));
    CHECK(std::abs(hits - samples * p) <= 4.0 * sigma);
  }

  // Independence: with p=1/2 the probability that vertices 0 and 1 have the
  // same adjacency indicator on all of W={2..9} is (p^2+q^2)^8 = 2^-8.
  {
    const int samples = 30000;
    const int k = 8;
    int matches = 0;
    for (int s = 0; s < samples; ++s) {
      const Graph g = sample_gnp({12, 0.5, static_cast<uint64_t>(s)});
      bool match = true;
      for (int w = 2; w < 2 + k; ++w)
        if (g.has_edge(0, w) != g.has_edge(1, w)) {
          match = false;
          break;
        }
      if (match) ++matches;
    }
    const double prob = std::pow(0.5, k);  // p^2 + q^2 = 1/2
    const double mean = samples * prob;
    const double sigma = std::sqrt(samples * prob * (1 - prob));
    CHECK(std::abs(matches - mean) <= 4.0 * sigma);
  }
}

TEST_CASE("BFS distances on known graphs") {
  CHECK(Graph::path(3).distances_from(0) == std::vector<int>{0, 1, 2});

  const auto k4 = Graph::complete(4).distances_from(2);
  CHECK(k4 == std::vector<int>{1, 1, 0, 1});

  CHECK(Graph::empty(2).distances_from(0) ==
        std::vector<int>{0, kUnreachable});

  CHECK_THROWS_AS(Graph::path(3).distances_from(3), ParameterError);
  CHECK_THROWS_AS(Graph::path(3).distances_from(-1), ParameterError);
}

TEST_CASE("BFS distances agree with an independent reference") {
  for (uint64_t seed : {3u, 4u}) {
    const Graph g = sample_gnp({40, 0.15, seed});
    for (int v = 0; v < g.n(); ++v) CHECK(g.distances_from(v) == naive_bfs(g, v));
  }
  const Graph p7 = Graph::path(7);
  for (int v = 0; v < 7; ++v) CHECK(p7.distances_from(v) == naive_bfs(p7, v));
}

TEST_CASE("diameter tests on fixed graphs") {
  CHECK(Graph::complete(4).diameter_at_most(1));
  CHECK(Graph::complete(4).diameter_le2());

  const Graph p4 = Graph::path(4);
  CHECK_FALSE(p4.diameter_at_most(2));
  CHECK_FALSE(p4.diameter_le2());
  CHECK(p4.diameter_at_most(3));

  const Graph c6 = Graph::cycle(6);
  CHECK_FALSE(c6.diameter_at_most(2));
  CHECK(c6.diameter_at_most(3));

  CHECK(Graph::star(5).diameter_le2());
  CHECK_FALSE(Graph::star(5).diameter_at_most(1));

  CHECK(Graph::empty(1).diameter_le2());
  CHECK_FALSE(Graph::empty(3).diameter_at_most(10));  // disconnected
  CHECK_FALSE(Graph::complete(2).diameter_at_most(0));
  CHECK_THROWS_AS(Graph::complete(2).diameter_at_most(-1), ParameterError);
}

TEST_CASE("random graphs above the connectivity window have diameter 2") {
  // At p = sqrt((2 ln n + 5)/n) the expected number of vertex pairs with no
  // common neighbor is about e^-5 * poly-corrections, so nearly every sample
  // has diameter <= 2.
  const int n = 500;
  const double p = std::sqrt((2.0 * std::log(n) + 5.0) / n);
  int good = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed)
    if (sample_gnp({n, p, seed}).diameter_at_most(2)) ++good;
  CHECK(good >= 99);
}

TEST_CASE("signatures on fixed graphs") {
  const Graph p3 = Graph::path(3);
  const int w0[] = {0};
  CHECK(p3.signature(2, w0).dists == std::vector<int>{2});

  const Graph k3 = Graph::complete(3);
  CHECK(k3.signature(1, w0).dists == std::vector<int>{1});
  CHECK(k3.signature(2, w0).dists == std::vector<int>{1});
  CHECK(k3.signature(1, w0) == k3.signature(2, w0));  // collision

  // A probed vertex reads 0 at its own index, in probe order.
  const int w01[] = {0, 1};
  const int w10[] = {1, 0};
  CHECK(k3.signature(0, w01).dists == std::vector<int>{0, 1});
  CHECK(k3.signature(0, w10).dists == std::vector<int>{1, 0});

  // Disconnected graphs give the sentinel, which still compares by equality.
  const Graph e2 = Graph::empty(2);
  const int w1[] = {1};
  CHECK(e2.signature(0, w1).dists == std::vector<int>{kUnreachable});

  // Diameter > 2 uses true BFS distances.
  const Graph p6 = Graph::path(6);
  const int w02[] = {0, 2};
  CHECK(p6.signature(5, w02).dists == std::vector<int>{5, 3});

  CHECK_THROWS_AS(p3.signature(3, w0), ParameterError);
  const int bad[] = {5};
  CHECK_THROWS_AS(p3.signature(0, bad), ParameterError);
}

TEST_CASE("signature fast path agrees with BFS on diameter-2 graphs") {
  int graphs_checked = 0;
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = sample_gnp({32, 0.5, seed});
    if (!g.diameter_le2()) continue;
    ++graphs_checked;
    // Probe sets of several sizes; compare against naive BFS columns.
    std::vector<std::vector<int>> dist_from(g.n());
    for (int w = 0; w < g.n(); ++w) dist_from[w] = naive_bfs(g, w);
    const std::vector<std::vector<int>> probe_sets = {
        {0}, {31, 0, 7}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}};
    for (const auto& probes : probe_sets) {
      for (int v = 0; v < g.n(); ++v) {
        const Signature sig = g.signature(v, probes);
        REQUIRE(sig.dists.size() == probes.size());
        for (size_t i = 0; i < probes.size(); ++i)
          CHECK(sig.dists[i] == dist_from[probes[i]][v]);
      }
    }
  }
  CHECK(graphs_checked >= 4);  // G(32, 1/2) has diameter 2 with high probability
}

TEST_CASE("codegree on fixed and sampled graphs") {
  const Graph k4 = Graph::complete(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) CHECK(k4.codegree(u, v) == 2);

  const Graph star = Graph::star(3);
  CHECK(star.codegree(1, 2) == 1);  // the center
  CHECK(star.codegree(0, 1) == 0);

  CHECK_THROWS_AS(k4.codegree(1, 1), ParameterError);
  CHECK_THROWS_AS(k4.codegree(0, 4), ParameterError);

  // Sampled pairs of G(1000, 1/2) concentrate around np^2 = 250.
  {
    const int n = 1000;
    const double p = 0.5;
    const Graph g = sample_gnp({n, p, 17});
    const double bound = 4.0 * std::sqrt(n * p * p * std::log(n));
    for (int i = 0; i < 100; ++i) {
      const int u = (i * 37) % n;
      const int v = (u + 1 + (i * 211) % (n - 1)) % n;
      if (u == v) continue;
      CHECK(std::abs(g.codegree(u, v) - n * p * p) <= bound);
    }
  }

  // Word-AND popcount agrees with a naive common-neighbor loop.
  {
    const Graph g = sample_gnp({25, 0.4, 8});
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) {
        int naive = 0;
        for (int w = 0; w < g.n(); ++w)
          if (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) ++naive;
        CHECK(g.codegree(u, v) == naive);
      }
  }
}

TEST_CASE("check_concentration on deterministic graphs") {
  // K_4 with p=1: every degree is 3 against np=4, normalized by
  // sqrt(4 ln 4); every codegree is 2 against np^2=4.
  const ConcentrationReport k4 = check_concentration(Graph::complete(4), 1.0);
  const double scale = std::sqrt(4.0 * std::log(4.0));
  CHECK(k4.worst_degree_deviation == doctest::Approx(1.0 / scale).epsilon(1e-9));
  CHECK(k4.worst_codegree_deviation == doctest::Approx(2.0 / scale).epsilon(1e-9));
  CHECK(k4.worst_degree_deviation == doctest::Approx(0.4246609).epsilon(1e-5));
  CHECK(k4.all_degrees_pass);
  CHECK(k4.all_codegrees_pass);
  CHECK(k4.pass());
  CHECK(k4.constant_used == 3.0);

  // The empty graph pretending to be G(100, 1/2): degrees miss np=50 by
  // 50/sqrt(50 ln 100) ~ 3.3 > 3, codegrees miss np^2=25 by only ~2.33.
  const ConcentrationReport e = check_concentration(Graph::empty(100), 0.5);
  CHECK(e.worst_degree_deviation ==
        doctest::Approx(50.0 / std::sqrt(50.0 * std::log(100.0))).epsilon(1e-9));
  CHECK(e.worst_degree_deviation == doctest::Approx(3.29507).epsilon(1e-4));
  CHECK_FALSE(e.all_degrees_pass);
  CHECK(e.all_codegrees_pass);
  CHECK_FALSE(e.pass());

  CHECK_THROWS_AS(check_concentration(Graph::complete(4), 0.0), ParameterError);
  CHECK_THROWS_AS(check_concentration(Graph::complete(4), 1.2), ParameterError);
  CHECK_THROWS_AS(check_concentration(Graph::complete(4), 0.5, 0.0), ParameterError);
  CHECK_THROWS_AS(check_concentration(Graph::empty(1), 0.5), ParameterError);
}

TEST_CASE("check_concentration passes on genuine G(n,p) samples") {
  // At n=1000, p=1/2 the +-3 sqrt(np ln n) window sits ~11 binomial standard
  // deviations out, so failures are essentially impossible.
  int good = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed)
    if (check_concentration(sample_gnp({1000, 0.5, seed}), 0.5).pass()) ++good;
  CHECK(good >= 99);
}

TEST_CASE("edge list save/load round trip") {
  const Graph g = sample_gnp({50, 0.3, 9});
  std::stringstream ss;
  save_edge_list(g, ss);
  const Graph h = load_edge_list(ss);
  CHECK(same_graph(g, h));

  std::stringstream golden;
  save_edge_list(Graph::path(3), golden);
  CHECK(golden.str() == "3 2\n0 1\n1 2\n");

  std::stringstream empty_graph;
  save_edge_list(Graph::empty(2), empty_graph);
  CHECK(empty_graph.str() == "2 0\n");
  CHECK(load_edge_list(empty_graph).n() == 2);
}

TEST_CASE("edge list loader rejects malformed input") {
  auto reject = [](const std::string& text) {
    std::stringstream ss(text);
    CHECK_THROWS_AS(load_edge_list(ss), ConfigError);
  };
  reject("");                      // missing header
  reject("3");                     // half a header
  reject("-1 0\n");                // negative vertex count
  reject("3 -2\n");                // negative edge count
  reject("3 2\n0 1\n");            // truncated edge section
  reject("3 1\n0 3\n");            // endpoint out of range
  reject("3 1\n-1 2\n");           // negative endpoint
  reject("3 1\n2 1\n");            // u >= v
  reject("3 1\n1 1\n");            // self-loop (also u >= v)
  reject("3 2\n0 1\n0 1\n");       // duplicate edge
  CHECK_THROWS_AS(load_edge_list_file("/nonexistent/graph.txt"), ConfigError);
}

TEST_CASE("make_fixture builds named graphs and rejects malformed descriptors") {
  CHECK(make_fixture("complete:4").edge_count() == 6);
  CHECK(make_fixture("path:5").edge_count() == 4);
  CHECK(make_fixture("cycle:6").n() == 6);
  CHECK(make_fixture("cycle:6").edge_count() == 6);
  CHECK(make_fixture("star:7").n() == 8);
  CHECK(make_fixture("star:7").edge_count() == 7);
  CHECK(make_fixture("empty:3").edge_count() == 0);

  CHECK_THROWS_AS(make_fixture("foo:4"), ConfigError);
  CHECK_THROWS_AS(make_fixture("path"), ConfigError);
  CHECK_THROWS_AS(make_fixture("path:"), ConfigError);
  CHECK_THROWS_AS(make_fixture("path:x"), ConfigError);
  CHECK_THROWS_AS(make_fixture("path:4x"), ConfigError);
  CHECK_THROWS_AS(make_fixture("cycle:2"), ConfigError);
  CHECK_THROWS_AS(make_fixture("star:-1"), ConfigError);
}
