#pragma once

// Paired vertex maps (phi, psi): [k] -> V and their classification into
// type I (two confluence-free traced cycles) and type II (two paths or
// closed walks agreeing exactly at both ends), plus the oracle-backed
// compatibility and acceptability checks and a census driver.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigid/aut.hpp"
#include "rigid/core.hpp"
#include "rigid/cycles.hpp"
#include "rigid/graph.hpp"
#include "rigid/random.hpp"
#include "rigid/undecided.hpp"

namespace rigid {

enum class ConfigKind { TypeI, TypeII, Invalid };

struct Configuration {
  std::vector<Vertex> phi;
  std::vector<Vertex> psi;
  ConfigKind kind = ConfigKind::Invalid;

  int k() const { return static_cast<int>(phi.size()); }
};

namespace detail {

inline bool distinct_vertices(const std::vector<Vertex>& s) {
  std::vector<Vertex> t = s;
  std::sort(t.begin(), t.end());
  return std::adjacent_find(t.begin(), t.end()) == t.end();
}

inline bool consecutive_adjacent(const Graph& g, const std::vector<Vertex>& s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (!g.has_edge(s[i], s[i + 1])) return false;
  return true;
}

/// (v_1,...,v_k) traces a simple cycle: all distinct, consecutive pairs
/// adjacent, and v_k adjacent to v_1.
inline bool traces_cycle(const Graph& g, const std::vector<Vertex>& s) {
  return s.size() >= 3 && distinct_vertices(s) && consecutive_adjacent(g, s) &&
         g.has_edge(s.back(), s.front());
}

inline bool traces_path(const Graph& g, const std::vector<Vertex>& s) {
  return distinct_vertices(s) && consecutive_adjacent(g, s);
}

/// Closed walk around a cycle: v_1 = v_k and (v_1,...,v_{k-1}) traces a
/// simple cycle. This is the only shape in which the two endpoints of a
/// type II image may coincide.
inline bool traces_closed_cycle(const Graph& g, const std::vector<Vertex>& s) {
  if (s.size() < 4 || s.front() != s.back()) return false;
  std::vector<Vertex> body(s.begin(), s.end() - 1);
  return traces_cycle(g, body);
}

}  // namespace detail

/// Structural classification only; no bound on k beyond k >= 3 is applied
/// here (callers that want a length cap pass it to the census).
inline Configuration classify_configuration(const Graph& g,
                                            std::vector<Vertex> phi,
                                            std::vector<Vertex> psi) {
  if (phi.size() != psi.size())
    throw std::domain_error("classify_configuration: map sizes differ");
  if (phi.size() < 3) throw std::domain_error("classify_configuration: k < 3");
  for (Vertex v : phi)
    if (v < 0 || v >= g.order())
      throw std::domain_error("classify_configuration: phi image out of range");
  for (Vertex v : psi)
    if (v < 0 || v >= g.order())
      throw std::domain_error("classify_configuration: psi image out of range");

  Configuration c{std::move(phi), std::move(psi), ConfigKind::Invalid};
  const int k = c.k();
  std::vector<int> confluences;
  for (int i = 0; i < k; ++i)
    if (c.phi[i] == c.psi[i]) confluences.push_back(i);

  if (confluences.empty() && detail::traces_cycle(g, c.phi) &&
      detail::traces_cycle(g, c.psi)) {
    c.kind = ConfigKind::TypeI;
    return c;
  }

  bool ends_only = confluences.size() == 2 && confluences.front() == 0 &&
                   confluences.back() == k - 1;
  auto pathlike = [&](const std::vector<Vertex>& s) {
    return detail::traces_path(g, s) || detail::traces_closed_cycle(g, s);
  };
  if (ends_only && pathlike(c.phi) && pathlike(c.psi))
    c.kind = ConfigKind::TypeII;
  return c;
}

/// True iff some automorphism of the graph induced by the 2-core sends
/// phi(i) to psi(i) for every index. Throws UndecidedError if the search
/// budget runs out, never a silent false.
inline bool is_compatible(const Graph& g, const Configuration& c,
                          long long budget = kDefaultSearchBudget) {
  if (c.kind == ConfigKind::Invalid)
    throw std::domain_error("is_compatible: invalid configuration");
  auto sub = induced_subgraph(g, two_core(g));
  std::vector<std::pair<Vertex, Vertex>> pins;
  for (int i = 0; i < c.k(); ++i) {
    Vertex a = sub.to_new[c.phi[i]];
    Vertex b = sub.to_new[c.psi[i]];
    if (a < 0 || b < 0)
      throw std::domain_error("is_compatible: image outside the 2-core");
    pins.emplace_back(a, b);
  }
  return constrained_isomorphism(sub.graph, sub.graph, pins, budget)
      .has_value();
}

/// True iff vertex sets U, W of size n-2 exist with im(phi) in U, im(psi)
/// in W, and an isomorphism G_U -> G_W sending phi(i) to psi(i). Searches
/// every admissible pair of deleted 2-sets, so meant for small n. Pairs
/// whose induced graphs differ in edge count or degree sequence are
/// skipped without touching the budget. A found witness is definitive
/// even if later pairs would have starved; UndecidedError is raised only
/// when the budget died with no witness found.
inline bool is_acceptable(const Graph& g, const Configuration& c,
                          long long budget = kDefaultSearchBudget) {
  if (c.kind == ConfigKind::Invalid)
    throw std::domain_error("is_acceptable: invalid configuration");
  const int n = g.order();
  auto in_image = [](const std::vector<Vertex>& im, Vertex v) {
    return std::find(im.begin(), im.end(), v) != im.end();
  };

  struct Side {
    InducedSubgraph sub;
    std::vector<int> degrees;
  };
  auto build_sides = [&](const std::vector<Vertex>& im) {
    std::vector<Side> sides;
    for (Vertex a = 0; a < n; ++a) {
      if (in_image(im, a)) continue;
      for (Vertex b = a + 1; b < n; ++b) {
        if (in_image(im, b)) continue;
        VertexSet keep;
        keep.reserve(n - 2);
        for (Vertex v = 0; v < n; ++v)
          if (v != a && v != b) keep.push_back(v);
        Side s{induced_subgraph(g, keep), {}};
        s.degrees = degree_sequence(s.sub.graph);
        sides.push_back(std::move(s));
      }
    }
    return sides;
  };
  std::vector<Side> left = build_sides(c.phi);
  std::vector<Side> right = build_sides(c.psi);

  bool starved = false;
  for (const Side& u : left) {
    for (const Side& w : right) {
      if (u.sub.graph.edge_count() != w.sub.graph.edge_count()) continue;
      if (u.degrees != w.degrees) continue;
      std::vector<std::pair<Vertex, Vertex>> pins;
      for (int i = 0; i < c.k(); ++i)
        pins.emplace_back(u.sub.to_new[c.phi[i]], w.sub.to_new[c.psi[i]]);
      try {
        if (constrained_isomorphism_shared(u.sub.graph, w.sub.graph, pins,
                                           budget))
          return true;
      } catch (const UndecidedError&) {
        starved = true;
        break;
      }
    }
    if (starved) break;
  }
  if (starved) throw UndecidedError("is_acceptable: search budget exhausted");
  return false;
}

struct CensusReport {
  bool exhaustive = false;
  long long pairs_examined = 0;
  long long type1 = 0;
  long long type2 = 0;
  long long compatible_type1 = 0;
  long long compatible_type2 = 0;
  long long undecided = 0;
};

namespace detail {

/// Every simple path on exactly k vertices, each direction separately.
/// nullopt when more than `cap` paths exist.
inline std::optional<std::vector<std::vector<Vertex>>> all_simple_paths(
    const Graph& g, int k, std::size_t cap) {
  std::vector<std::vector<Vertex>> out;
  if (k < 1 || k > g.order()) return out;
  std::vector<Vertex> path;
  std::vector<char> used(g.order(), 0);
  bool overflow = false;
  auto dfs = [&](auto&& self, Vertex cur) -> void {
    if (overflow) return;
    if (static_cast<int>(path.size()) == k) {
      if (out.size() >= cap) {
        overflow = true;
        return;
      }
      out.push_back(path);
      return;
    }
    for (Vertex w : g.neighbors(cur)) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      self(self, w);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (Vertex v = 0; v < g.order(); ++v) {
    path.assign(1, v);
    used[v] = 1;
    dfs(dfs, v);
    used[v] = 0;
    if (overflow) return std::nullopt;
  }
  return out;
}

/// Every closed walk (v_1,...,v_k) with v_1 = v_k tracing a simple cycle,
/// from every root and in both orientations.
inline std::vector<std::vector<Vertex>> all_closed_walks(const Graph& g,
                                                         int k) {
  std::vector<std::vector<Vertex>> out;
  if (k < 4) return out;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto scan = cycle_scan(g, v);
    for (auto& cyc : enumerate_cycles_impl(g, v, k - 1, scan)) {
      std::vector<Vertex> walk = cyc.vertices;
      walk.push_back(v);
      out.push_back(std::move(walk));
    }
  }
  return out;
}

}  // namespace detail

/// Configuration census. For small graphs (n <= 12, bounded candidate
/// pools) every realizable (phi, psi) pair with 3 <= k <= max_k is
/// enumerated directly from the graph's paths and closed walks; the pool
/// of candidate images covers every map shape a type I or II
/// configuration can have, so the counts are exact. Otherwise `budget`
/// map pairs are sampled uniformly (k uniform in [3, max_k], images
/// i.i.d. uniform over V^k) with the given seed. A configuration whose
/// image leaves the 2-core is counted as incompatible without invoking
/// the oracle: automorphisms of the core graph cannot move it.
inline CensusReport census_compatible(const Graph& g, int max_k,
                                      long long budget, std::uint64_t seed,
                                      long long probe_budget =
                                          kDefaultSearchBudget) {
  CensusReport report;
  const int n = g.order();
  if (n == 0 || max_k < 3) {
    report.exhaustive = true;
    return report;
  }

  auto in_core = detail::make_mask(g, two_core(g));
  auto images_in_core = [&](const Configuration& c) {
    for (Vertex v : c.phi)
      if (!in_core[v]) return false;
    for (Vertex v : c.psi)
      if (!in_core[v]) return false;
    return true;
  };
  auto tally = [&](const Configuration& c) {
    if (c.kind == ConfigKind::Invalid) return;
    bool type1 = c.kind == ConfigKind::TypeI;
    (type1 ? report.type1 : report.type2) += 1;
    if (!images_in_core(c)) return;
    try {
      if (is_compatible(g, c, probe_budget))
        (type1 ? report.compatible_type1 : report.compatible_type2) += 1;
    } catch (const UndecidedError&) {
      ++report.undecided;
    }
  };

  if (n <= 12) {
    constexpr std::size_t kPoolCap = 4000;
    constexpr long long kPairCap = 4'000'000;
    std::vector<std::vector<std::vector<Vertex>>> pools;
    long long pair_work = 0;
    bool feasible = true;
    for (int k = 3; k <= max_k; ++k) {
      auto paths = detail::all_simple_paths(g, k, kPoolCap);
      if (!paths) {
        feasible = false;
        break;
      }
      auto pool = std::move(*paths);
      auto closed = detail::all_closed_walks(g, k);
      pool.insert(pool.end(), closed.begin(), closed.end());
      if (pool.size() > kPoolCap) {
        feasible = false;
        break;
      }
      pair_work += static_cast<long long>(pool.size()) *
                   static_cast<long long>(pool.size());
      if (pair_work > kPairCap) {
        feasible = false;
        break;
      }
      pools.push_back(std::move(pool));
    }
    if (feasible) {
      report.exhaustive = true;
      for (const auto& pool : pools)
        for (const auto& phi : pool)
          for (const auto& psi : pool) {
            ++report.pairs_examined;
            tally(classify_configuration(g, phi, psi));
          }
      return report;
    }
  }

  Rng rng(seed);
  const int k_span = max_k - 2;
  for (long long t = 0; t < budget; ++t) {
    int k = 3 + static_cast<int>(uniform_below(
                    rng, static_cast<std::uint64_t>(k_span)));
    std::vector<Vertex> phi(k), psi(k);
    for (auto& v : phi)
      v = static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    for (auto& v : psi)
      v = static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    ++report.pairs_examined;
    tally(classify_configuration(g, std::move(phi), std::move(psi)));
  }
  return report;
}

}  // namespace rigid
