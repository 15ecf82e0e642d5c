#pragma once

// Small graph builders and brute-force oracles shared by the test files.
// The oracles are deliberately naive: permutation scans and exhaustive
// enumeration that are obviously correct at the sizes tests use them.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "rigid/graph.hpp"

namespace testutil {

using rigid::Graph;
using rigid::Vertex;

inline Graph make_graph(int n,
                        const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

/// Permutation scan. Only call with small n.
inline bool brute_force_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<Vertex> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto [u, v] : a.edges()) {
      if (!b.has_edge(perm[u], perm[v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Number of adjacency-preserving permutations. Only call with small n.
inline std::uint64_t naive_aut_order(const Graph& g) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (auto [u, v] : g.edges()) {
      if (!g.has_edge(perm[u], perm[v])) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

/// Every graph on n labeled vertices, as edge masks over the n(n-1)/2
/// vertex pairs. Visit order is the mask integer order.
template <typename Fn>
void for_each_graph(int n, Fn&& fn) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::uint64_t total = std::uint64_t(1) << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Graph g(n);
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) g.add_edge(pairs[b].first, pairs[b].second);
    fn(g);
  }
}

}  // namespace testutil
