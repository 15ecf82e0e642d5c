#pragma once

// Vertex-deleted decks and reconstruction from them. The pipeline mirrors
// the argument it validates: recover the degree sequence and |E| by edge
// counting, recover the 2-core size card by card, locate the cards whose
// deleted vertex has all neighbours of core degree >= 4, then overlay two
// such cards through the pinned isomorphism of their doubly-deleted
// graphs. Every successful output is re-decked and compared against the
// input; the procedure never returns a guess.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigid/aut.hpp"
#include "rigid/canonical.hpp"
#include "rigid/core.hpp"
#include "rigid/graph.hpp"
#include "rigid/io.hpp"
#include "rigid/undecided.hpp"

namespace rigid {

class InconsistentDeckError : public std::runtime_error {
 public:
  explicit InconsistentDeckError(const std::string& what)
      : std::runtime_error(what) {}
};

struct Card {
  Graph form;
  bool via_exhaustive = false;  // which canonicalizer produced the form
};

using Deck = std::vector<Card>;

struct CanonAny {
  Graph form;
  std::vector<int> labeling;  // labeling[old id] = new id
  bool via_exhaustive = false;
};

/// Canonical form through the fast labeling when it succeeds, else the
/// exhaustive search. Mixing the two per input is sound: success of the
/// fast path depends only on the isomorphism class, so two isomorphic
/// graphs always take the same path and get equal forms, and equal forms
/// from either path are relabeled copies, hence isomorphic.
inline CanonAny canonical_form_any(const Graph& g,
                                   long long budget = kDefaultSearchBudget) {
  CanonicalResult c = canonical_label(g);
  if (c.ok()) return {std::move(c.form), std::move(c.labeling), false};
  auto e = canonical_form_exhaustive(g, budget);
  if (!e)
    throw UndecidedError("canonical_form_any: exhaustive search over budget");
  return {std::move(e->form), std::move(e->labeling), true};
}

inline Deck deck(const Graph& g, long long budget = kDefaultSearchBudget) {
  const int n = g.order();
  if (n < 2) throw std::domain_error("deck: need at least 2 vertices");
  Deck out;
  out.reserve(n);
  for (Vertex u = 0; u < n; ++u) {
    VertexSet keep;
    keep.reserve(n - 1);
    for (Vertex v = 0; v < n; ++v)
      if (v != u) keep.push_back(v);
    CanonAny c = canonical_form_any(induced_subgraph(g, keep).graph, budget);
    out.push_back(Card{std::move(c.form), c.via_exhaustive});
  }
  return out;
}

/// Sorted edge-list texts of the cards; two decks are equal as multisets
/// iff their fingerprints are equal.
inline std::vector<std::string> deck_fingerprint(const Deck& d) {
  std::vector<std::string> out;
  out.reserve(d.size());
  for (const Card& c : d) out.push_back(write_edge_list(c.form));
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff no two vertices share 3 or more neighbours, which is exactly
/// the absence of a K_{3,2} subgraph.
inline bool is_k32_free(const Graph& g) {
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v) {
      const auto& a = g.neighbors(u);
      const auto& b = g.neighbors(v);
      std::size_t i = 0, j = 0;
      int common = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
          ++i;
        } else if (a[i] > b[j]) {
          ++j;
        } else {
          ++i;
          ++j;
          if (++common >= 3) return false;
        }
      }
    }
  return true;
}

namespace detail {

/// Total and per-card edge counts give |E| and the deleted degrees: each
/// edge of G survives in exactly n-2 cards.
struct DeckCounts {
  long long total_edges = 0;       // |E|
  std::vector<int> deleted_degree; // degree of card i's deleted vertex
};

inline DeckCounts deck_counts(const Deck& d) {
  const int n = static_cast<int>(d.size());
  if (n < 3)
    throw InconsistentDeckError("deck too small to recover a degree sequence");
  long long sum = 0;
  for (const Card& c : d) {
    if (c.form.order() != n - 1)
      throw InconsistentDeckError("card order differs from n-1");
    sum += c.form.edge_count();
  }
  if (sum % (n - 2) != 0)
    throw InconsistentDeckError("card edge totals are not divisible by n-2");
  DeckCounts out;
  out.total_edges = sum / (n - 2);
  out.deleted_degree.reserve(n);
  for (const Card& c : d) {
    long long deg = out.total_edges - c.form.edge_count();
    if (deg < 0 || deg > n - 1)
      throw InconsistentDeckError("recovered degree out of range");
    out.deleted_degree.push_back(static_cast<int>(deg));
  }
  return out;
}

}  // namespace detail

inline std::vector<int> degree_sequence_from_deck(const Deck& d) {
  auto counts = detail::deck_counts(d);
  std::sort(counts.deleted_degree.begin(), counts.deleted_degree.end());
  return counts.deleted_degree;
}

namespace detail {

/// Decides whether the card's core degree sequence can arise from the
/// full one by removing a single entry equal to du and decrementing du
/// entries, all of value at least 4. The decomposition of the count
/// differences into decrement moves is unique (suffix sums), so the test
/// is a direct feasibility check.
inline bool a_test(const std::vector<int>& full, const std::vector<int>& card,
                   int du) {
  if (full.size() != card.size() + 1) return false;
  int top = 0;
  for (int w : full) top = std::max(top, w);
  for (int w : card) top = std::max(top, w);
  top = std::max(top, du);
  std::vector<long long> cnt_full(top + 2, 0), cnt_card(top + 2, 0);
  for (int w : full) ++cnt_full[w];
  for (int w : card) ++cnt_card[w];
  if (cnt_full[du] == 0) return false;

  long long moved_total = 0;
  long long suffix = 0;
  std::vector<long long> moved(top + 2, 0);
  for (int w = top + 1; w >= 0; --w) {
    long long h = cnt_full[w] - cnt_card[w] - (w == du ? 1 : 0);
    suffix += h;
    moved[w] = suffix;  // entries decremented from value w
    if (moved[w] < 0) return false;
    if (w < 4 && moved[w] != 0) return false;
    long long avail = cnt_full[w] - (w == du ? 1 : 0);
    if (moved[w] > avail) return false;
    moved_total += moved[w];
  }
  return moved_total == du;
}

}  // namespace detail

struct ReconResult {
  std::optional<Graph> graph;
  std::string failure_step;  // empty on success
  std::string detail;

  bool ok() const { return graph.has_value(); }
};

/// Reconstruction from a deck of canonical cards. Steps: (i) edge count
/// and degrees, (ii) core size, (iii) candidate cards whose deleted
/// vertex has all neighbours of core degree >= 4, (iv) first pair of
/// candidate cards whose doubly-deleted graphs match under exactly one
/// overlay up to isomorphism, (v) the last edge bit from |E|. The
/// accepted overlay is re-decked and must reproduce the input exactly.
/// Structural inconsistencies in the counting identities throw
/// InconsistentDeckError; a budget-starved canonicalization throws
/// UndecidedError; everything else is a value.
inline ReconResult reconstruct_from_deck(const Deck& d,
                                         long long budget =
                                             kDefaultSearchBudget) {
  ReconResult res;
  auto fail = [&](std::string step, std::string why) {
    res.failure_step = std::move(step);
    res.detail = std::move(why);
    return res;
  };

  const int n = static_cast<int>(d.size());
  if (n < 3) return fail("input", "deck has fewer than 3 cards");
  detail::DeckCounts counts;
  try {
    counts = detail::deck_counts(d);
  } catch (const InconsistentDeckError& e) {
    return fail("degree-sequence", e.what());
  }
  const long long total_edges = counts.total_edges;

  // (ii) core size: min degree >= 2 pins the core to all of V; otherwise
  // a card that deleted a degree <= 1 vertex has the same core.
  std::vector<int> core_size(n);
  for (int i = 0; i < n; ++i)
    core_size[i] = static_cast<int>(two_core(d[i].form).size());
  int r_total = -1;
  int min_deg = *std::min_element(counts.deleted_degree.begin(),
                                  counts.deleted_degree.end());
  std::vector<int> core_degseq;
  if (min_deg >= 2) {
    r_total = n;
    core_degseq = counts.deleted_degree;
    std::sort(core_degseq.begin(), core_degseq.end());
  } else {
    int witness = -1;
    for (int i = 0; i < n; ++i)
      if (counts.deleted_degree[i] <= 1) {
        witness = i;
        break;
      }
    r_total = core_size[witness];
    auto sub = induced_subgraph(d[witness].form, two_core(d[witness].form));
    core_degseq = degree_sequence(sub.graph);
  }

  // (iii) cards whose deleted vertex is surrounded by core degree >= 4.
  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    if (core_size[i] != r_total - 1) continue;
    auto sub = induced_subgraph(d[i].form, two_core(d[i].form));
    if (detail::a_test(core_degseq, degree_sequence(sub.graph),
                       counts.deleted_degree[i]))
      candidates.push_back(i);
  }
  if (candidates.size() < 2)
    return fail("interior-pair", "fewer than two candidate cards");
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (counts.deleted_degree[a] != counts.deleted_degree[b])
      return counts.deleted_degree[a] < counts.deleted_degree[b];
    return a < b;
  });

  // One doubly-deleted candidate: a vertex removed from a card, with the
  // canonical labeling of what remains.
  struct DdCand {
    Vertex removed;
    InducedSubgraph sub;
    CanonAny canon;
  };
  auto build_cands = [&](int card_idx, int partner_degree) {
    std::vector<DdCand> out;
    const Graph& cg = d[card_idx].form;
    for (Vertex v = 0; v < cg.order(); ++v) {
      int deg = cg.degree(v);
      if (deg != partner_degree && deg != partner_degree - 1) continue;
      VertexSet keep;
      keep.reserve(cg.order() - 1);
      for (Vertex w = 0; w < cg.order(); ++w)
        if (w != v) keep.push_back(w);
      DdCand c{v, induced_subgraph(cg, keep), {}};
      if (static_cast<int>(two_core(c.sub.graph).size()) != r_total - 2)
        continue;
      c.canon = canonical_form_any(c.sub.graph, budget);
      out.push_back(std::move(c));
    }
    return out;
  };

  const auto target = deck_fingerprint(d);
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      const int i = candidates[a], j = candidates[b];
      auto left = build_cands(i, counts.deleted_degree[j]);
      auto right = build_cands(j, counts.deleted_degree[i]);
      if (left.empty() || right.empty()) continue;

      std::vector<Graph> overlays;
      std::vector<std::string> overlay_forms;
      for (const DdCand& L : left)
        for (const DdCand& R : right) {
          if (!(L.canon.form == R.canon.form)) continue;
          // Overlay: all of card i, plus the deleted vertex of card j
          // re-attached through the composed canonical labelings.
          const Graph& ci = d[i].form;
          const Graph& cj = d[j].form;
          Graph h(ci.order() + 1);
          for (auto [x, y] : ci.edges()) h.add_edge(x, y);
          const Vertex added = ci.order();
          std::vector<int> inv(L.canon.labeling.size());
          for (std::size_t t = 0; t < L.canon.labeling.size(); ++t)
            inv[L.canon.labeling[t]] = static_cast<int>(t);
          for (Vertex w : cj.neighbors(R.removed)) {
            int canon_id = R.canon.labeling[R.sub.to_new[w]];
            h.add_edge(added, L.sub.to_old[inv[canon_id]]);
          }
          if (h.edge_count() == total_edges - 1)
            h.add_edge(added, L.removed);
          if (h.edge_count() != total_edges) continue;
          std::string fp = write_edge_list(canonical_form_any(h, budget).form);
          if (std::find(overlay_forms.begin(), overlay_forms.end(), fp) ==
              overlay_forms.end()) {
            overlay_forms.push_back(std::move(fp));
            overlays.push_back(std::move(h));
          }
        }
      if (overlays.empty()) continue;
      if (overlays.size() > 1) continue;  // not uniquely consistent

      if (deck_fingerprint(deck(overlays.front(), budget)) != target)
        return fail("deck-mismatch",
                    "the unique overlay's deck differs from the input");
      res.graph = std::move(overlays.front());
      return res;
    }
  }
  return fail("interior-pair",
              "no pair of candidate cards produced a uniquely consistent "
              "overlay");
}

/// Brute-force check that the deck pins down the isomorphism class, for
/// small n: every graph sharing a card with G is the card plus one vertex
/// re-attached some way, so extending one fixed card over all neighbour
/// subsets enumerates every candidate class.
inline bool deck_determines(const Graph& g,
                            long long budget = kDefaultSearchBudget) {
  const int n = g.order();
  if (n < 2) throw std::domain_error("deck_determines: need n >= 2");
  if (n > 8)
    throw UndecidedError("deck_determines: brute force is capped at n = 8");

  Deck dk = deck(g, budget);
  const auto target = deck_fingerprint(dk);
  const Graph& base = dk.front().form;

  std::vector<int> degrees;
  if (n >= 3) {
    // Decks with equal fingerprints share |E|, so the attachment degree
    // is forced.
    degrees.push_back(g.edge_count() - base.edge_count());
  } else {
    for (int t = 0; t < n; ++t) degrees.push_back(t);
  }

  std::set<std::string> classes;
  const int base_n = base.order();
  for (int want : degrees) {
    std::vector<int> pick(want);
    auto walk = [&](auto&& self, int from, int depth) -> void {
      if (depth == want) {
        Graph h(base_n + 1);
        for (auto [x, y] : base.edges()) h.add_edge(x, y);
        for (int s : pick) h.add_edge(base_n, s);
        if (deck_fingerprint(deck(h, budget)) == target)
          classes.insert(write_edge_list(canonical_form_any(h, budget).form));
        return;
      }
      for (int s = from; s < base_n; ++s) {
        pick[depth] = s;
        self(self, s + 1, depth + 1);
      }
    };
    walk(walk, 0, 0);
  }
  return classes.size() == 1;
}

}  // namespace rigid
