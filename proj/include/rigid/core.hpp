#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rigid/graph.hpp"

namespace rigid {

/// Vertex set of the 2-core: what remains after repeatedly deleting
/// vertices of degree <= 1. The result does not depend on deletion order
/// (the 2-core is the unique maximal subgraph of min degree >= 2).
inline VertexSet two_core(const Graph& g) {
  std::vector<int> deg(g.order());
  std::vector<char> dead(g.order(), 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < g.order(); ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) {
      dead[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dead[w]) continue;
      if (--deg[w] <= 1) {
        dead[w] = 1;
        queue.push_back(w);
      }
    }
  }
  VertexSet core;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!dead[v]) core.push_back(v);
  return core;
}

/// One peeled connected piece hanging off the core. Every vertex outside
/// the core has at most one neighbor inside it, and a whole peeled
/// component can touch the core through at most one edge (two attachment
/// edges would close a cycle surviving the peel), so `attach` and `root`
/// are well defined.
struct PendantTree {
  Vertex attach;       // core endpoint of the single attachment edge
  Vertex root;         // non-core endpoint of that edge
  VertexSet vertices;  // the whole peeled component, root included
};

struct CorePartition {
  VertexSet core;
  std::vector<PendantTree> pendant_trees;
  std::vector<VertexSet> acyclic_components;  // peeled pieces with no core edge
};

inline CorePartition core_partition(const Graph& g) {
  CorePartition out;
  out.core = two_core(g);
  std::vector<char> in_core(g.order(), 0);
  for (Vertex v : out.core) in_core[v] = 1;

  std::vector<char> seen(g.order(), 0);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (in_core[s] || seen[s]) continue;
    VertexSet comp;
    std::vector<std::pair<Vertex, Vertex>> attachments;  // (non-core, core)
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (in_core[w]) {
          attachments.emplace_back(v, w);
        } else if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    if (attachments.empty()) {
      out.acyclic_components.push_back(std::move(comp));
    } else if (attachments.size() == 1) {
      out.pendant_trees.push_back(
          {attachments[0].second, attachments[0].first, std::move(comp)});
    } else {
      throw std::logic_error(
          "core_partition: peeled component with several core edges");
    }
  }
  std::sort(out.pendant_trees.begin(), out.pendant_trees.end(),
            [](const PendantTree& a, const PendantTree& b) {
              return a.vertices < b.vertices;
            });
  std::sort(out.acyclic_components.begin(), out.acyclic_components.end());
  return out;
}

/// Vertices of T within graph distance 2 of the non-core set. T must lie
/// inside the 2-core. Implemented as one multi-source BFS from V\R
/// truncated at depth 2.
inline VertexSet peripheral_vertices(const Graph& g, const VertexSet& t) {
  check_vertex_set(g, t);
  VertexSet core = two_core(g);
  std::vector<char> in_core(g.order(), 0);
  for (Vertex v : core) in_core[v] = 1;
  for (Vertex v : t)
    if (!in_core[v])
      throw std::domain_error("peripheral_vertices: T not inside the 2-core");

  std::vector<int> dist(g.order(), -1);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!in_core[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (dist[v] == 2) continue;
    for (Vertex w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  VertexSet out;
  for (Vertex v : t)
    if (dist[v] >= 0) out.push_back(v);
  return out;
}

/// True iff removing u and v commutes with taking the 2-core:
/// R(G minus {u,v}) = R(G) minus {u,v}.
inline bool is_interior_pair(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw std::domain_error("is_interior_pair: u == v");
  VertexSet core = two_core(g);
  if (!std::binary_search(core.begin(), core.end(), u) ||
      !std::binary_search(core.begin(), core.end(), v))
    throw std::domain_error("is_interior_pair: vertex outside the 2-core");

  VertexSet rest;
  rest.reserve(g.order() - 2);
  for (Vertex w = 0; w < g.order(); ++w)
    if (w != u && w != v) rest.push_back(w);
  auto sub = induced_subgraph(g, rest);
  VertexSet sub_core = two_core(sub.graph);
  VertexSet mapped;
  mapped.reserve(sub_core.size());
  for (Vertex w : sub_core) mapped.push_back(sub.to_old[w]);
  std::sort(mapped.begin(), mapped.end());

  VertexSet expected;
  for (Vertex w : core)
    if (w != u && w != v) expected.push_back(w);
  return mapped == expected;
}

namespace detail {

/// BFS distances from src; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, Vertex src) {
  std::vector<int> dist(g.order(), -1);
  std::deque<Vertex> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

}  // namespace detail

/// Max BFS eccentricity; nullopt means the graph is disconnected (the
/// diameter is infinite). Graphs on <= 1 vertex have diameter 0.
inline std::optional<int> diameter(const Graph& g) {
  if (g.order() <= 1) return 0;
  int best = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto dist = detail::bfs_distances(g, v);
    for (int d : dist) {
      if (d < 0) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

/// Largest diameter among connected components; this is what the
/// structural checks use, since in the sparse regime the graph typically
/// has small tree components and plain diameter would be infinite.
inline int max_component_diameter(const Graph& g) {
  if (g.order() == 0) return 0;
  std::vector<char> done(g.order(), 0);
  int best = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (done[s]) continue;
    auto dist = detail::bfs_distances(g, s);
    // One extra sweep per component vertex gives the exact eccentricities.
    for (Vertex v = 0; v < g.order(); ++v) {
      if (dist[v] < 0 || done[v]) continue;
      done[v] = 1;
      auto dv = detail::bfs_distances(g, v);
      for (int d : dv) best = std::max(best, d);
    }
  }
  return best;
}

}  // namespace rigid
