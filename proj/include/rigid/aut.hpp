#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigid/core.hpp"
#include "rigid/graph.hpp"
#include "rigid/signatures.hpp"
#include "rigid/undecided.hpp"

namespace rigid {

inline constexpr long long kDefaultSearchBudget = 5'000'000;

struct AutGroup {
  std::vector<std::vector<Vertex>> generators;
  boost::multiprecision::cpp_int order = 1;
};

namespace detail {

/// Vertex colorings for one or two graphs with a shared, canonical color
/// id space: ids are ranks in the sorted table of signatures, so equal
/// structures receive equal ids in both graphs and across runs.
struct ColorPair {
  std::vector<int> g, h;
};

/// One refinement pass: signature of v = (color, sorted neighbor colors);
/// new ids by joint signature rank. Splits only, never merges (the old
/// color is part of the signature).
inline int refine_round(const Graph& ga, const Graph& gb, ColorPair& c) {
  using Sig = std::vector<int>;
  auto sig_of = [](const Graph& g, const std::vector<int>& col, Vertex v) {
    Sig s;
    s.reserve(g.degree(v) + 1);
    s.push_back(col[v]);
    for (Vertex w : g.neighbors(v)) s.push_back(col[w]);
    std::sort(s.begin() + 1, s.end());
    return s;
  };
  std::vector<Sig> sa(ga.order()), sb(gb.order());
  for (Vertex v = 0; v < ga.order(); ++v) sa[v] = sig_of(ga, c.g, v);
  for (Vertex v = 0; v < gb.order(); ++v) sb[v] = sig_of(gb, c.h, v);
  std::vector<const Sig*> all;
  all.reserve(sa.size() + sb.size());
  for (const auto& s : sa) all.push_back(&s);
  for (const auto& s : sb) all.push_back(&s);
  std::sort(all.begin(), all.end(),
            [](const Sig* x, const Sig* y) { return *x < *y; });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Sig* x, const Sig* y) { return *x == *y; }),
            all.end());
  auto rank = [&](const Sig& s) {
    return static_cast<int>(
        std::lower_bound(all.begin(), all.end(), &s,
                         [](const Sig* x, const Sig* y) { return *x < *y; }) -
        all.begin());
  };
  for (Vertex v = 0; v < ga.order(); ++v) c.g[v] = rank(sa[v]);
  for (Vertex v = 0; v < gb.order(); ++v) c.h[v] = rank(sb[v]);
  return static_cast<int>(all.size());
}

inline int color_count(const ColorPair& c) {
  int m = -1;
  for (int x : c.g) m = std::max(m, x);
  for (int x : c.h) m = std::max(m, x);
  return m + 1;
}

/// Refine to a fixed point. Returns false when the color class sizes of
/// the two graphs disagree (no color-respecting bijection can exist).
inline bool refine_fixpoint(const Graph& ga, const Graph& gb, ColorPair& c,
                            long long& budget) {
  int count = color_count(c);
  for (;;) {
    if (--budget < 0) throw UndecidedError("refinement budget exhausted");
    int next = refine_round(ga, gb, c);
    if (next == count) break;
    count = next;
  }
  std::vector<int> na(count, 0), nb(count, 0);
  for (int x : c.g) ++na[x];
  for (int x : c.h) ++nb[x];
  return na == nb;
}

/// Marks u (and its peer) as a singleton below the rest of its class.
/// Doubling keeps relative order of all other classes, so ids stay
/// canonical after the next refinement round densifies them.
inline void individualize(std::vector<int>& colors, Vertex u) {
  for (Vertex v = 0; v < static_cast<int>(colors.size()); ++v)
    colors[v] = colors[v] * 2 + (v == u ? 0 : 1);
}

/// Initial invariant coloring: ids are joint ranks of (degree, nabla).
inline ColorPair seed_colors(const Graph& ga, const Graph& gb) {
  using Key = std::pair<int, IntMultiset>;
  auto keys_of = [](const Graph& g) {
    std::vector<Key> keys;
    keys.reserve(g.order());
    auto nb = nabla_all(g);
    for (Vertex v = 0; v < g.order(); ++v)
      keys.emplace_back(g.degree(v), std::move(nb[v]));
    return keys;
  };
  auto ka = keys_of(ga), kb = keys_of(gb);
  std::vector<Key> all = ka;
  all.insert(all.end(), kb.begin(), kb.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  ColorPair c;
  auto rank = [&](const Key& k) {
    return static_cast<int>(
        std::lower_bound(all.begin(), all.end(), k) - all.begin());
  };
  c.g.resize(ga.order());
  c.h.resize(gb.order());
  for (Vertex v = 0; v < ga.order(); ++v) c.g[v] = rank(ka[v]);
  for (Vertex v = 0; v < gb.order(); ++v) c.h[v] = rank(kb[v]);
  return c;
}

/// Smallest non-singleton color class of c.g; ties broken by color id.
/// Returns -1 when the coloring is discrete.
inline int pick_target_class(const std::vector<int>& colors, int count) {
  std::vector<int> size(count, 0);
  for (int x : colors) ++size[x];
  int best = -1;
  for (int c = 0; c < count; ++c)
    if (size[c] >= 2 && (best < 0 || size[c] < size[best])) best = c;
  return best;
}

/// Backtracking isomorphism search over refined colorings. Returns a full
/// mapping or nullopt for "none in this branch". Throws on budget
/// exhaustion.
inline std::optional<std::vector<Vertex>> iso_search(const Graph& ga,
                                                     const Graph& gb,
                                                     ColorPair c,
                                                     long long& budget) {
  if (--budget < 0) throw UndecidedError("isomorphism search budget");
  if (!refine_fixpoint(ga, gb, c, budget)) return std::nullopt;
  int count = color_count(c);
  int target = pick_target_class(c.g, count);
  if (target < 0) {
    // Discrete: map by color, then verify every edge both ways.
    std::vector<Vertex> of_color(count, -1);
    for (Vertex v = 0; v < gb.order(); ++v) of_color[c.h[v]] = v;
    std::vector<Vertex> map(ga.order());
    for (Vertex v = 0; v < ga.order(); ++v) map[v] = of_color[c.g[v]];
    for (Vertex v = 0; v < ga.order(); ++v)
      for (Vertex w : ga.neighbors(v))
        if (v < w && !gb.has_edge(map[v], map[w])) return std::nullopt;
    // Equal edge counts were checked up front, so preserving all edges of
    // ga under a bijection makes this an isomorphism.
    return map;
  }
  Vertex u = -1;
  for (Vertex v = 0; v < ga.order(); ++v)
    if (c.g[v] == target) {
      u = v;
      break;
    }
  for (Vertex v = 0; v < gb.order(); ++v) {
    if (c.h[v] != target) continue;
    ColorPair next = c;
    individualize(next.g, u);
    individualize(next.h, v);
    if (auto r = iso_search(ga, gb, next, budget)) return r;
  }
  return std::nullopt;
}

}  // namespace detail

/// An isomorphism g -> h mapping every pin (gv, hv) accordingly, or
/// nullopt if none exists. Exact; throws UndecidedError when the node
/// budget runs out before the search is resolved. The budget is consumed
/// in place so a caller issuing many probes can share one allowance.
inline std::optional<std::vector<Vertex>> constrained_isomorphism_shared(
    const Graph& g, const Graph& h,
    const std::vector<std::pair<Vertex, Vertex>>& pins, long long& budget) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count())
    return std::nullopt;
  std::map<Vertex, Vertex> fwd, bwd;
  for (auto [a, b] : pins) {
    if (a < 0 || a >= g.order() || b < 0 || b >= h.order())
      throw std::domain_error("constrained_isomorphism: pin out of range");
    auto [it, fresh] = fwd.emplace(a, b);
    if (!fresh && it->second != b) return std::nullopt;
    auto [jt, fresh2] = bwd.emplace(b, a);
    if (!fresh2 && jt->second != a) return std::nullopt;
  }
  auto colors = detail::seed_colors(g, h);
  int base = detail::color_count(colors);
  int k = 0;
  for (auto [a, b] : fwd) {
    colors.g[a] = base + k;
    colors.h[b] = base + k;
    ++k;
  }
  return detail::iso_search(g, h, std::move(colors), budget);
}

inline std::optional<std::vector<Vertex>> constrained_isomorphism(
    const Graph& g, const Graph& h,
    const std::vector<std::pair<Vertex, Vertex>>& pins,
    long long budget = kDefaultSearchBudget) {
  return constrained_isomorphism_shared(g, h, pins, budget);
}

/// Exact automorphism group: generators plus the exact order, computed by
/// walking a stabilizer chain where each orbit membership question is
/// settled by a fresh constrained search. One budget covers the whole
/// chain, not each probe separately.
inline AutGroup automorphism_group(const Graph& g,
                                   long long budget = kDefaultSearchBudget) {
  AutGroup out;
  if (g.order() == 0) return out;
  detail::ColorPair c = detail::seed_colors(g, g);
  detail::refine_fixpoint(g, g, c, budget);

  std::vector<std::pair<Vertex, Vertex>> pins;
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Vertex> candidates;
    for (Vertex w = v + 1; w < g.order(); ++w)
      if (c.g[w] == c.g[v]) candidates.push_back(w);
    long long orbit = 1;
    for (Vertex w : candidates) {
      auto pinned = pins;
      pinned.emplace_back(v, w);
      if (auto perm = constrained_isomorphism_shared(g, g, pinned, budget)) {
        ++orbit;
        out.generators.push_back(std::move(*perm));
      }
    }
    out.order *= orbit;
    if (!candidates.empty()) {
      pins.emplace_back(v, v);
      detail::individualize(c.g, v);
      detail::individualize(c.h, v);
      detail::refine_fixpoint(g, g, c, budget);
    }
  }
  return out;
}

inline bool is_rigid(const Graph& g,
                     long long budget = kDefaultSearchBudget) {
  return automorphism_group(g, budget).order == 1;
}

/// True iff the subgraph induced by the 2-core has only the identity
/// automorphism. An empty core counts as trivially rigid.
inline bool core_aut_trivial(const Graph& g,
                             long long budget = kDefaultSearchBudget) {
  VertexSet core = two_core(g);
  if (core.empty()) return true;
  return is_rigid(induced_subgraph(g, core).graph, budget);
}

/// Canonical form by exhaustive individualization-refinement: the minimal
/// edge-list certificate over all refinement-respecting discrete
/// colorings. Exact (equal forms iff isomorphic) but exponential in the
/// worst case; meant for small graphs and as the fallback canonicalizer.
struct ExhaustiveCanon {
  Graph form;
  std::vector<int> labeling;  // labeling[old id] = new id
};

namespace detail {

struct CanonSearch {
  const Graph& g;
  long long budget;
  bool exhausted = false;
  std::vector<std::pair<int, int>> best;
  std::vector<int> best_labeling;
  bool have_best = false;
  Graph empty{0};

  explicit CanonSearch(const Graph& graph) : g(graph) {}

  void run(ColorPair c) {
    if (--budget < 0) {
      exhausted = true;
      return;
    }
    refine_fixpoint(g, empty, c, budget);
    int count = color_count(c);
    int target = pick_target_class(c.g, count);
    if (target < 0) {
      std::vector<std::pair<int, int>> cert;
      cert.reserve(g.edge_count());
      for (auto [u, v] : g.edges()) {
        int a = c.g[u], b = c.g[v];
        cert.emplace_back(std::min(a, b), std::max(a, b));
      }
      std::sort(cert.begin(), cert.end());
      if (!have_best || cert < best) {
        best = std::move(cert);
        best_labeling = c.g;
        have_best = true;
      }
      return;
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      if (c.g[v] != target) continue;
      ColorPair next = c;
      individualize(next.g, v);
      run(std::move(next));
      if (exhausted) return;
    }
  }
};

}  // namespace detail

inline std::optional<ExhaustiveCanon> canonical_form_exhaustive(
    const Graph& g, long long budget = kDefaultSearchBudget) {
  if (g.order() == 0) return ExhaustiveCanon{Graph(0), {}};
  detail::CanonSearch search(g);
  search.budget = budget;
  try {
    search.run(detail::seed_colors(g, search.empty));
  } catch (const UndecidedError&) {
    return std::nullopt;
  }
  if (search.exhausted || !search.have_best) return std::nullopt;
  Graph form(g.order());
  for (auto [a, b] : search.best) form.add_edge(a, b);
  return ExhaustiveCanon{std::move(form), std::move(search.best_labeling)};
}

}  // namespace rigid
