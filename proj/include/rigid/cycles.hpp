#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rigid/graph.hpp"
#include "rigid/signatures.hpp"

namespace rigid {

/// Rooted oriented cycle (x1,...,xk): all distinct, consecutive pairs and
/// the wrap-around pair adjacent. Root and orientation matter; two cycles
/// are equal only when the sequences are equal.
struct RootedCycle {
  std::vector<Vertex> vertices;
  int length() const { return static_cast<int>(vertices.size()); }
  bool operator==(const RootedCycle&) const = default;
};

/// Upper bound on cycle lengths the enumeration accepts. The asymptotic
/// analysis caps lengths at log n; natural log is the permissive reading,
/// and the floor of 3 keeps the smallest graphs (where ceil(ln n) < 3)
/// usable.
inline int cycle_length_cap(int n) {
  if (n < 3) return 3;
  return std::max(3, static_cast<int>(std::ceil(std::log(n))));
}

namespace detail {

struct CycleScan {
  std::vector<int> dist;    // BFS distance from the root
  std::vector<Vertex> branch;  // first tree step from the root; -1 at root
};

inline CycleScan cycle_scan(const Graph& g, Vertex v) {
  CycleScan s;
  s.dist.assign(g.order(), -1);
  s.branch.assign(g.order(), -1);
  s.dist[v] = 0;
  std::vector<Vertex> frontier{v}, next;
  while (!frontier.empty()) {
    next.clear();
    for (Vertex x : frontier)
      for (Vertex y : g.neighbors(x))
        if (s.dist[y] < 0) {
          s.dist[y] = s.dist[x] + 1;
          s.branch[y] = (x == v) ? y : s.branch[x];
          next.push_back(y);
        }
    std::swap(frontier, next);
  }
  return s;
}

/// Shortest cycle through the scan's root: minimum of dist(x)+dist(y)+1
/// over edges xy whose endpoints lie in different root branches. The two
/// tree paths of such an edge meet only at the root, so every candidate
/// value is realized by a simple cycle through it, and any cycle through
/// the root contains a branch-crossing edge of no larger value.
inline std::optional<int> shortest_cycle_from_scan(const Graph& g,
                                                   const CycleScan& s) {
  int best = -1;
  for (Vertex x = 0; x < g.order(); ++x) {
    if (s.dist[x] <= 0) continue;
    for (Vertex y : g.neighbors(x)) {
      if (y <= x || s.dist[y] <= 0) continue;
      if (s.branch[x] == s.branch[y]) continue;
      int len = s.dist[x] + s.dist[y] + 1;
      if (best < 0 || len < best) best = len;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

/// All rooted oriented cycles of exactly `len` vertices starting at v,
/// by DFS with the distance-to-root pruning rule.
inline std::vector<RootedCycle> enumerate_cycles_impl(const Graph& g,
                                                      Vertex v, int len,
                                                      const CycleScan& s) {
  std::vector<RootedCycle> out;
  std::vector<Vertex> path{v};
  std::vector<char> on_path(g.order(), 0);
  on_path[v] = 1;
  auto dfs = [&](auto&& self, Vertex cur) -> void {
    if (static_cast<int>(path.size()) == len) {
      if (g.has_edge(cur, v)) out.push_back({path});
      return;
    }
    int pos_next = static_cast<int>(path.size()) + 1;
    for (Vertex w : g.neighbors(cur)) {
      if (on_path[w]) continue;
      if (s.dist[w] < 0 || s.dist[w] > len - pos_next + 1) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  dfs(dfs, v);
  return out;
}

}  // namespace detail

/// Length of the shortest cycle containing v; nullopt when v is on no
/// cycle.
inline std::optional<int> shortest_cycle_length_through(const Graph& g,
                                                        Vertex v) {
  if (v < 0 || v >= g.order())
    throw std::domain_error("shortest_cycle_length_through: vertex range");
  return detail::shortest_cycle_from_scan(g, detail::cycle_scan(g, v));
}

/// All rooted oriented cycles of exactly length `len` with root v. Each
/// orientation is listed separately; output is in DFS order over sorted
/// adjacency, hence deterministic.
inline std::vector<RootedCycle> enumerate_rooted_cycles(const Graph& g,
                                                        Vertex v, int len) {
  if (v < 0 || v >= g.order())
    throw std::domain_error("enumerate_rooted_cycles: vertex range");
  if (len < 3 || len > cycle_length_cap(g.order()))
    throw std::domain_error("enumerate_rooted_cycles: length out of range");
  return detail::enumerate_cycles_impl(g, v, len, detail::cycle_scan(g, v));
}

enum class CycleOrdering { Less, Greater, Tie };

namespace detail {

/// Index-wise comparison of the nabla sequences of two equal-length
/// cycles, with the per-vertex nabla values supplied by the caller.
inline CycleOrdering compare_keys(const std::vector<IntMultiset>& a,
                                  const std::vector<IntMultiset>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto c = multiset_lex_compare(a[i], b[i]);
    if (c == Ordering::Less) return CycleOrdering::Less;
    if (c == Ordering::Greater) return CycleOrdering::Greater;
  }
  return CycleOrdering::Tie;
}

}  // namespace detail

/// The semi-order on rooted cycles: shorter cycles first; equal lengths
/// decided by the first index whose nabla multisets differ. Tie means the
/// nabla sequences agree everywhere, the situation the labeling algorithm
/// must surface as a property-(3) failure rather than tie-break silently.
inline CycleOrdering cycle_compare(const Graph& g, const RootedCycle& x,
                                   const RootedCycle& y) {
  if (x.length() != y.length())
    return x.length() < y.length() ? CycleOrdering::Less
                                   : CycleOrdering::Greater;
  std::vector<IntMultiset> ka, kb;
  ka.reserve(x.vertices.size());
  kb.reserve(y.vertices.size());
  for (Vertex v : x.vertices) ka.push_back(nabla(g, v));
  for (Vertex v : y.vertices) kb.push_back(nabla(g, v));
  return detail::compare_keys(ka, kb);
}

/// The minimum label of a vertex on a cycle: among cycles of the shortest
/// length through v rooted at v, the one with the smallest nabla sequence.
/// `tie` is set when that minimum is attained by more than one cycle.
struct MinCycleLabel {
  std::optional<RootedCycle> cycle;
  std::vector<IntMultiset> key;  // nabla sequence of the chosen cycle
  bool tie = false;
};

namespace detail {

inline MinCycleLabel min_cycle_label_impl(
    const Graph& g, Vertex v, const std::vector<IntMultiset>& all_nabla) {
  MinCycleLabel out;
  CycleScan scan = cycle_scan(g, v);
  auto len = shortest_cycle_from_scan(g, scan);
  if (!len) return out;
  // The shortest length through v may exceed the nominal log-n cap on
  // small or unusual inputs; the minimum label stays well defined and
  // isomorphism-invariant, so no cap is applied here.
  auto cycles = enumerate_cycles_impl(g, v, *len, scan);
  int count = 0;
  for (auto& c : cycles) {
    std::vector<IntMultiset> key;
    key.reserve(c.vertices.size());
    for (Vertex x : c.vertices) key.push_back(all_nabla[x]);
    if (!out.cycle) {
      out.cycle = std::move(c);
      out.key = std::move(key);
      count = 1;
      continue;
    }
    auto cmp = compare_keys(key, out.key);
    if (cmp == CycleOrdering::Less) {
      out.cycle = std::move(c);
      out.key = std::move(key);
      count = 1;
    } else if (cmp == CycleOrdering::Tie) {
      ++count;
    }
  }
  out.tie = count > 1;
  return out;
}

}  // namespace detail

inline MinCycleLabel min_cycle_label(const Graph& g, Vertex v) {
  if (v < 0 || v >= g.order())
    throw std::domain_error("min_cycle_label: vertex range");
  return detail::min_cycle_label_impl(g, v, nabla_all(g));
}

}  // namespace rigid
