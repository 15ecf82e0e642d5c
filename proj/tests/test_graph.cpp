#include <algorithm>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rigid/graph.hpp"
#include "rigid/random.hpp"

using namespace rigid;
using testutil::complete_graph;
using testutil::cycle_graph;
using testutil::make_graph;
using testutil::path_graph;

TEST_CASE("graph construction and mutation", "[graph]") {
  Graph g(4);
  REQUIRE(g.order() == 4);
  REQUIRE(g.edge_count() == 0);
  g.add_edge(0, 1);
  g.add_edge(1, 3);
  REQUIRE(g.edge_count() == 2);
  REQUIRE(g.has_edge(0, 1));
  REQUIRE(g.has_edge(1, 0));
  REQUIRE(!g.has_edge(0, 3));
  REQUIRE(g.degree(1) == 2);
  REQUIRE(g.neighbors(1) == std::vector<Vertex>{0, 3});

  REQUIRE_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(g.add_edge(0, 4), std::domain_error);
  REQUIRE_THROWS_AS(g.degree(-1), std::domain_error);
  REQUIRE_THROWS_AS(Graph(-1), std::invalid_argument);
}

TEST_CASE("edges come back sorted with u < v", "[graph]") {
  Graph g(4);
  g.add_edge(3, 2);
  g.add_edge(1, 0);
  g.add_edge(2, 0);
  auto e = g.edges();
  std::vector<std::pair<Vertex, Vertex>> want{{0, 1}, {0, 2}, {2, 3}};
  REQUIRE(e == want);
}

TEST_CASE("set neighborhood on the five-cycle", "[graph]") {
  Graph c5 = cycle_graph(5);
  REQUIRE(set_neighborhood(c5, {0, 1}) == VertexSet{2, 4});
  REQUIRE(closed_neighborhood(c5, {0}) == VertexSet{0, 1, 4});
  REQUIRE(set_neighborhood(c5, {}) == VertexSet{});
  REQUIRE_THROWS_AS(set_neighborhood(c5, {1, 0}), std::domain_error);
  REQUIRE_THROWS_AS(set_neighborhood(c5, {0, 0}), std::domain_error);
  REQUIRE_THROWS_AS(set_neighborhood(c5, {5}), std::domain_error);
}

TEST_CASE("cross edge count on the four-cycle", "[graph]") {
  Graph c4 = cycle_graph(4);
  REQUIRE(cross_edge_count(c4, {0, 1}, {1, 2}) == 2);
  REQUIRE(cross_edge_count(c4, {0}, {2}) == 0);
  REQUIRE(cross_edge_count(c4, {0, 1, 2, 3}, {0, 1, 2, 3}) == 4);
}

TEST_CASE("sigma keeps vertices with exactly one neighbor inside", "[graph]") {
  Graph c5 = cycle_graph(5);
  REQUIRE(sigma(c5, {0, 1}) == VertexSet{2, 4});

  Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  REQUIRE(sigma(star, {0}) == VertexSet{1, 2, 3});

  // Two neighbors inside U disqualify a vertex.
  Graph c4 = cycle_graph(4);
  REQUIRE(sigma(c4, {0, 2}) == VertexSet{});
}

TEST_CASE("induced subgraph keeps the chosen edges", "[graph]") {
  Graph c5 = cycle_graph(5);
  auto sub = induced_subgraph(c5, {0, 1, 2});
  REQUIRE(sub.graph.order() == 3);
  REQUIRE(sub.graph.edge_count() == 2);
  REQUIRE(sub.to_old == VertexSet{0, 1, 2});
  REQUIRE(sub.to_new[0] == 0);
  REQUIRE(sub.to_new[2] == 2);
  REQUIRE(sub.to_new[4] == -1);
  REQUIRE(sub.graph.has_edge(0, 1));
  REQUIRE(sub.graph.has_edge(1, 2));
  REQUIRE(!sub.graph.has_edge(0, 2));
}

TEST_CASE("degree sequence and relabel", "[graph]") {
  Graph p4 = path_graph(4);
  REQUIRE(degree_sequence(p4) == std::vector<int>{1, 1, 2, 2});
  Graph r = relabel(p4, {3, 1, 2, 0});
  REQUIRE(degree_sequence(r) == std::vector<int>{1, 1, 2, 2});
  REQUIRE(r.has_edge(3, 1));
  REQUIRE(r.has_edge(1, 2));
  REQUIRE(r.has_edge(2, 0));
  REQUIRE_THROWS_AS(relabel(p4, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("neighborhood identities on random graphs", "[graph]") {
  Rng rng(20260815);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = gnp_sample(30, 0.15, rng);

    // Σ deg = 2|E|
    long long dsum = 0;
    for (Vertex v = 0; v < g.order(); ++v) dsum += g.degree(v);
    REQUIRE(dsum == 2LL * g.edge_count());

    // Random vertex set U.
    VertexSet u;
    for (Vertex v = 0; v < g.order(); ++v)
      if (uniform01(rng) < 0.3) u.push_back(v);

    // N(U) is disjoint from U.
    VertexSet nu = set_neighborhood(g, u);
    for (Vertex v : nu)
      REQUIRE(!std::binary_search(u.begin(), u.end(), v));

    // N[U] = U ∪ N(U).
    VertexSet closed = closed_neighborhood(g, u);
    VertexSet merged(u);
    merged.insert(merged.end(), nu.begin(), nu.end());
    std::sort(merged.begin(), merged.end());
    REQUIRE(closed == merged);

    // d(U,U) counts exactly the edges inside U.
    REQUIRE(cross_edge_count(g, u, u) ==
            induced_subgraph(g, u).graph.edge_count());

    // d(v,U) sums over U's mask.
    auto mask = std::vector<char>(g.order(), 0);
    for (Vertex v : u) mask[v] = 1;
    for (Vertex v = 0; v < g.order(); ++v) {
      int direct = 0;
      for (Vertex y : g.neighbors(v)) direct += mask[y];
      REQUIRE(degree_into(g, v, mask) == direct);
    }
  }
}
