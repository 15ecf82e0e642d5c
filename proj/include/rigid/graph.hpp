#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rigid {

using Vertex = int;

/// Sorted, duplicate-free list of vertex ids. All free functions taking a
/// VertexSet expect this representation and validate it against the graph.
using VertexSet = std::vector<Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Treat as immutable once populated; all algorithms in this library only
/// read it, so sharing one instance across threads is safe.
class Graph {
public:
  Graph() = default;

  explicit Graph(int n) : adj_(check_order(n)) {}

  Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int order() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return m_; }

  int degree(Vertex u) const {
    check_vertex(u);
    return static_cast<int>(adj_[u].size());
  }

  const std::vector<Vertex>& neighbors(Vertex u) const {
    check_vertex(u);
    return adj_[u];
  }

  bool has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// Inserts the edge keeping adjacency sorted. Rejects self-loops,
  /// out-of-range ids and duplicates.
  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("graph: self-loop rejected");
    insert_arc(u, v);
    insert_arc(v, u);
    ++m_;
  }

  /// All edges as (u,v) pairs with u < v, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(m_);
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& other) const = default;

private:
  static int check_order(int n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    return n;
  }

  void check_vertex(Vertex u) const {
    if (u < 0 || u >= order())
      throw std::domain_error("graph: vertex id out of range");
  }

  void insert_arc(Vertex u, Vertex v) {
    auto& row = adj_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it != row.end() && *it == v)
      throw std::invalid_argument("graph: duplicate edge rejected");
    row.insert(it, v);
  }

  std::vector<std::vector<Vertex>> adj_;
  int m_ = 0;
};

/// Throws std::domain_error unless U is sorted, duplicate-free and within
/// 0..n-1 for this graph.
inline void check_vertex_set(const Graph& g, const VertexSet& u) {
  Vertex prev = -1;
  for (Vertex v : u) {
    if (v < 0 || v >= g.order())
      throw std::domain_error("vertex set: id out of range");
    if (v <= prev)
      throw std::domain_error("vertex set: not sorted or has duplicates");
    prev = v;
  }
}

namespace detail {

/// Reusable membership mask; avoids reallocating a bool array per call.
inline std::vector<char> make_mask(const Graph& g, const VertexSet& u) {
  std::vector<char> mask(g.order(), 0);
  for (Vertex v : u) mask[v] = 1;
  return mask;
}

}  // namespace detail

/// N(U): all neighbors of U outside U itself.
inline VertexSet set_neighborhood(const Graph& g, const VertexSet& u) {
  check_vertex_set(g, u);
  auto in_u = detail::make_mask(g, u);
  std::vector<char> seen(g.order(), 0);
  VertexSet out;
  for (Vertex x : u)
    for (Vertex y : g.neighbors(x))
      if (!in_u[y] && !seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
  std::sort(out.begin(), out.end());
  return out;
}

/// Ñ(U): union over u in U of {u} together with u's neighbors.
inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& u) {
  check_vertex_set(g, u);
  std::vector<char> seen(g.order(), 0);
  VertexSet out;
  auto put = [&](Vertex y) {
    if (!seen[y]) {
      seen[y] = 1;
      out.push_back(y);
    }
  };
  for (Vertex x : u) {
    put(x);
    for (Vertex y : g.neighbors(x)) put(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// d(U,W): number of distinct edges with one endpoint in U and the other in
/// W. An edge lying inside U∩W is counted once.
inline long long cross_edge_count(const Graph& g, const VertexSet& u,
                                  const VertexSet& w) {
  check_vertex_set(g, u);
  check_vertex_set(g, w);
  auto in_u = detail::make_mask(g, u);
  auto in_w = detail::make_mask(g, w);
  long long count = 0;
  for (Vertex a = 0; a < g.order(); ++a)
    for (Vertex b : g.neighbors(a)) {
      if (a >= b) continue;
      if ((in_u[a] && in_w[b]) || (in_u[b] && in_w[a])) ++count;
    }
  return count;
}

/// d(v,U) for a single vertex: how many of v's neighbors lie in U.
inline int degree_into(const Graph& g, Vertex v, const std::vector<char>& mask) {
  int d = 0;
  for (Vertex y : g.neighbors(v)) d += mask[y] ? 1 : 0;
  return d;
}

/// σ(U): vertices outside U with exactly one neighbor in U.
inline VertexSet sigma(const Graph& g, const VertexSet& u) {
  check_vertex_set(g, u);
  auto in_u = detail::make_mask(g, u);
  VertexSet out;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (in_u[v]) continue;
    if (degree_into(g, v, in_u) == 1) out.push_back(v);
  }
  return out;
}

/// Result of taking an induced subgraph: the graph plus both id maps.
/// to_old[new_id] = old id; to_new[old_id] = new id or -1 if absent.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_old;
  std::vector<Vertex> to_new;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& u) {
  check_vertex_set(g, u);
  InducedSubgraph out;
  out.to_old = u;
  out.to_new.assign(g.order(), -1);
  for (int i = 0; i < static_cast<int>(u.size()); ++i) out.to_new[u[i]] = i;
  out.graph = Graph(static_cast<int>(u.size()));
  for (Vertex x : u)
    for (Vertex y : g.neighbors(x)) {
      if (x < y && out.to_new[y] >= 0)
        out.graph.add_edge(out.to_new[x], out.to_new[y]);
    }
  return out;
}

/// Sorted degree sequence of the whole graph.
inline std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d(g.order());
  for (Vertex v = 0; v < g.order(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

/// All vertices 0..n-1 as a VertexSet.
inline VertexSet all_vertices(const Graph& g) {
  VertexSet v(g.order());
  for (int i = 0; i < g.order(); ++i) v[i] = i;
  return v;
}

/// Applies a permutation to the vertex ids: result has edge
/// (perm[u], perm[v]) for every edge (u,v) of g.
inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  if (static_cast<int>(perm.size()) != g.order())
    throw std::invalid_argument("relabel: permutation size mismatch");
  Graph out(g.order());
  for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
  return out;
}

}  // namespace rigid
