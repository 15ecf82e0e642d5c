#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rigid/core.hpp"
#include "rigid/graph.hpp"

namespace rigid {

/// Sorted multiset of non-negative integers. Construction normalizes, so
/// equality and ordering are plain vector operations afterwards.
struct IntMultiset {
  std::vector<int> elems;

  IntMultiset() = default;
  explicit IntMultiset(std::vector<int> v) : elems(std::move(v)) {
    std::sort(elems.begin(), elems.end());
  }

  std::size_t size() const { return elems.size(); }
  bool operator==(const IntMultiset&) const = default;
  auto operator<=>(const IntMultiset& o) const {
    return std::lexicographical_compare_three_way(
        elems.begin(), elems.end(), o.elems.begin(), o.elems.end());
  }
};

enum class Ordering { Less, Equal, Greater };

/// Lexicographic comparison of the ascending element sequences; a proper
/// prefix compares Less.
inline Ordering multiset_lex_compare(const IntMultiset& a,
                                     const IntMultiset& b) {
  auto c = a <=> b;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

namespace detail {

/// nabla with the closed-neighborhood mask supplied by the caller, so the
/// all-vertices loop can reuse one timestamped array.
inline IntMultiset nabla_masked(const Graph& g, Vertex u,
                                std::vector<int>& stamp, int tick) {
  stamp[u] = tick;
  for (Vertex v : g.neighbors(u)) stamp[v] = tick;
  std::vector<int> out;
  out.reserve(g.degree(u));
  for (Vertex v : g.neighbors(u)) {
    int d = 0;
    for (Vertex w : g.neighbors(v)) d += stamp[w] != tick;
    out.push_back(d);
  }
  return IntMultiset(std::move(out));
}

}  // namespace detail

/// The multiset {d(v, V minus closed-neighborhood(u)) : v a neighbor of u}:
/// each neighbor's count of neighbors outside {u} and N(u).
inline IntMultiset nabla(const Graph& g, Vertex u) {
  if (u < 0 || u >= g.order())
    throw std::domain_error("nabla: vertex out of range");
  std::vector<int> stamp(g.order(), 0);
  return detail::nabla_masked(g, u, stamp, 1);
}

/// nabla of every vertex in one pass.
inline std::vector<IntMultiset> nabla_all(const Graph& g) {
  std::vector<IntMultiset> out(g.order());
  std::vector<int> stamp(g.order(), 0);
  for (Vertex u = 0; u < g.order(); ++u)
    out[u] = detail::nabla_masked(g, u, stamp, u + 1);
  return out;
}

/// nabla evaluated inside the subgraph induced by the 2-core (Z in the
/// analysis this library implements). u must belong to the core.
inline IntMultiset nabla_core(const Graph& g, Vertex u) {
  VertexSet core = two_core(g);
  if (!std::binary_search(core.begin(), core.end(), u))
    throw std::domain_error("nabla_core: vertex outside the 2-core");
  auto sub = induced_subgraph(g, core);
  return nabla(sub.graph, sub.to_new[u]);
}

namespace detail {

/// Appends to `out` every multiset obtainable from `base` by deleting at
/// most two elements. Each result stays sorted since base is sorted.
inline std::vector<std::vector<int>> deletion_variants(
    const std::vector<int>& base) {
  std::vector<std::vector<int>> out;
  int n = static_cast<int>(base.size());
  out.push_back(base);
  auto drop = [&](int i, int j) {  // j = -1 means drop only i
    std::vector<int> v;
    v.reserve(n);
    for (int t = 0; t < n; ++t)
      if (t != i && t != j) v.push_back(base[t]);
    out.push_back(std::move(v));
  };
  // Deleting any one of several equal elements gives the same multiset;
  // skipping duplicates keeps the variant list small.
  for (int i = 0; i < n; ++i) {
    if (i > 0 && base[i] == base[i - 1]) continue;
    drop(i, -1);
    for (int j = i + 1; j < n; ++j) {
      if (j > i + 1 && base[j] == base[j - 1]) continue;
      drop(i, j);
    }
  }
  return out;
}

/// Can sorted a be matched to sorted b, pairing each a[i] with b[i], where
/// the side that is larger in a pair pays |a[i]-b[i]| from its budget and
/// no pair may differ by more than 2? Componentwise matching of the sorted
/// sequences is optimal for both budgets and for the bottleneck at once
/// (the costs max(x-y,0), max(y-x,0), |x-y| all satisfy the Monge
/// inequality), so checking this single pairing decides feasibility.
inline bool decrement_matchable(const std::vector<int>& a,
                                const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  int cost_a = 0, cost_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int d = a[i] - b[i];
    if (d > 2 || d < -2) return false;
    if (d > 0)
      cost_a += d;
    else
      cost_b -= d;
    if (cost_a > 4 || cost_b > 4) return false;
  }
  return true;
}

}  // namespace detail

/// Approximate multiset equality: each side independently may delete up to
/// two elements and decrease remaining elements by 1 or 2 with total
/// decrement at most 4; true iff some combination makes the sides equal.
inline bool approx_equal(const IntMultiset& a, const IntMultiset& b) {
  if (a.elems.size() > b.elems.size() + 2 ||
      b.elems.size() > a.elems.size() + 2)
    return false;
  auto va = detail::deletion_variants(a.elems);
  auto vb = detail::deletion_variants(b.elems);
  for (const auto& x : va)
    for (const auto& y : vb)
      if (detail::decrement_matchable(x, y)) return true;
  return false;
}

}  // namespace rigid
