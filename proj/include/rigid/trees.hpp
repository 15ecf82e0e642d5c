#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigid/graph.hpp"

namespace rigid {

/// Canonical encoding of a rooted tree plus a canonical position id per
/// vertex. Codes are equal iff the rooted trees are isomorphic. Positions
/// are preorder indices of the canonical traversal (children visited in
/// sorted-code order), so any isomorphism between two trees with equal
/// codes can be chosen to preserve positions; siblings with identical
/// subtree codes get distinct sequential positions.
struct RootedTreeCode {
  std::string code;
  std::vector<int> position;  // indexed by vertex id of the input tree
};

namespace detail {

inline void check_is_tree(const Graph& t) {
  if (t.order() == 0) throw std::domain_error("tree code: empty graph");
  if (t.edge_count() != t.order() - 1)
    throw std::domain_error("tree code: edge count wrong for a tree");
  // Connectivity: with n-1 edges, reaching all vertices from 0 suffices.
  std::vector<char> seen(t.order(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    ++count;
    for (Vertex w : t.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  if (count != t.order()) throw std::domain_error("tree code: disconnected");
}

}  // namespace detail

inline RootedTreeCode rooted_tree_code(const Graph& t, Vertex root) {
  detail::check_is_tree(t);
  if (root < 0 || root >= t.order())
    throw std::domain_error("tree code: root out of range");

  int n = t.order();
  std::vector<Vertex> parent(n, -1);
  std::vector<Vertex> order;  // BFS order; reversed it is a valid post-order
  order.reserve(n);
  order.push_back(root);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex v = order[i];
    for (Vertex w : t.neighbors(v))
      if (parent[w] < 0) {
        parent[w] = v;
        order.push_back(w);
      }
  }

  std::vector<std::string> code(n);
  std::vector<std::vector<Vertex>> kids(n);  // sorted by child code
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    std::stable_sort(kids[v].begin(), kids[v].end(),
                     [&](Vertex a, Vertex b) { return code[a] < code[b]; });
    std::string c = "(";
    for (Vertex k : kids[v]) c += code[k];
    c += ")";
    code[v] = std::move(c);
    if (v != root) kids[parent[v]].push_back(v);
  }

  RootedTreeCode out;
  out.code = code[root];
  out.position.assign(n, -1);
  int next = 0;
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.position[v] = next++;
    // Push reversed so the smallest-code child is visited first.
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

/// Center vertices of a tree (one or two), by repeated leaf stripping.
inline std::vector<Vertex> tree_centers(const Graph& t) {
  detail::check_is_tree(t);
  int n = t.order();
  if (n == 1) return {0};
  std::vector<int> deg(n);
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    std::vector<Vertex> next;
    remaining -= static_cast<int>(layer.size());
    for (Vertex v : layer)
      for (Vertex w : t.neighbors(v))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

/// Canonical encoding of an unrooted tree: root at the center, or for
/// bicentral trees at whichever center gives the smaller rooted code.
/// Codes are equal iff the trees are isomorphic; the root choice and
/// positions are exposed for callers that label component vertices.
struct FreeTreeCode {
  std::string code;
  Vertex root;
  std::vector<int> position;
};

inline FreeTreeCode free_tree_code(const Graph& t) {
  auto centers = tree_centers(t);
  RootedTreeCode best = rooted_tree_code(t, centers[0]);
  Vertex root = centers[0];
  if (centers.size() == 2) {
    RootedTreeCode other = rooted_tree_code(t, centers[1]);
    if (other.code < best.code) {
      best = std::move(other);
      root = centers[1];
    }
  }
  return {std::move(best.code), root, std::move(best.position)};
}

}  // namespace rigid
