// Acceptance gate for the library. Each criterion below is a
// self-contained check that prints exactly one line:
//
//   PASS A3 rate=0.995 contradictions=0 (9.8s)
//   FAIL A5 median=31 outside pinned envelope [6,14] (12.0s)
//
// Run with no arguments for the whole gate, or name criteria (A1 A2 ...)
// to run a subset. Exit status is 0 iff every executed criterion passed.
//
// The Monte Carlo thresholds are pinned from pilot runs recorded in
// tests/baselines/; the pilot seeds differ from the gate seeds, so the
// gate is an out-of-sample check against those baselines.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "helpers.hpp"
#include "rigid/aut.hpp"
#include "rigid/canonical.hpp"
#include "rigid/experiment.hpp"
#include "rigid/prob.hpp"
#include "rigid/random.hpp"
#include "rigid/reconstruct.hpp"
#include "rigid/signatures.hpp"
#include "rigid/trees.hpp"

using namespace rigid;
using testutil::cycle_graph;
using testutil::make_graph;
using testutil::path_graph;

namespace {

// Pinned Monte Carlo baselines; see tests/baselines/README.md for the
// pilot runs (seeds and raw outputs) these numbers come from.
constexpr double kA3MinTrivialRate = 0.95;
constexpr int kA5MedianLo = 8;
constexpr int kA5MedianHi = 9;
constexpr double kA8MinReconRate = 0.95;
constexpr int kA9MinZeroTrials = 19;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

Graph star_graph(int n) {
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(0, i);
  return g;
}

/// Labeled tree from a Pruefer sequence over [0, n); empty sequence gives
/// the single edge on two vertices.
Graph tree_from_pruefer(int n, const std::vector<int>& seq) {
  Graph g(n);
  if (n == 1) return g;
  std::vector<int> degree(n, 1);
  for (int s : seq) ++degree[s];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (int s : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    g.add_edge(std::min(leaf, s), std::max(leaf, s));
    if (--degree[s] == 1) leaves.insert(s);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  g.add_edge(std::min(a, b), std::max(a, b));
  return g;
}

Graph random_tree(int n, Rng& rng) {
  std::vector<int> seq(std::max(0, n - 2));
  for (int& s : seq) s = static_cast<int>(uniform_below(rng, n));
  return tree_from_pruefer(n, seq);
}

bool valid_isomorphism(const Graph& a, const Graph& b,
                       const std::vector<Vertex>& map) {
  const int n = a.order();
  if (b.order() != n || static_cast<int>(map.size()) != n) return false;
  if (a.edge_count() != b.edge_count()) return false;
  std::vector<char> hit(n, 0);
  for (Vertex v : map) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (auto [u, v] : a.edges())
    if (!b.has_edge(map[u], map[v])) return false;
  return true;
}

// ---------------------------------------------------------------------
// A1: the labeling outcome is a function of the isomorphism class. Over
// a thousand (graph, permutation) pairs across the sparse random strata
// plus hand-built trees and cycles, the relabeled graph must produce the
// same outcome kind, the same violated property on failure, and the
// identical canonical form on success.
Outcome run_a1() {
  long long pairs = 0, mismatches = 0;
  Rng rng(derive_seed(101, "gate-canonicality", 0));

  auto check_graph = [&](const Graph& g, int perms) {
    CanonicalResult base = canonical_label(g);
    for (int t = 0; t < perms; ++t) {
      Graph h = relabel(g, random_permutation(g.order(), rng));
      CanonicalResult r = canonical_label(h);
      ++pairs;
      bool same_kind =
          base.ok() == r.ok() &&
          (base.ok() || base.violation->property == r.violation->property);
      bool same_form = !base.ok() || base.form == r.form;
      if (!same_kind || !same_form) ++mismatches;
    }
  };

  for (double np : {4.0, 8.0}) {
    for (int i = 0; i < 100; ++i) check_graph(gnp_sample(50, np / 50, rng), 2);
    for (int i = 0; i < 60; ++i) check_graph(gnp_sample(200, np / 200, rng), 2);
    for (int i = 0; i < 25; ++i)
      check_graph(gnp_sample(2000, np / 2000, rng), 2);
  }
  for (int n = 2; n <= 20; ++n) check_graph(path_graph(n), 3);
  for (int n = 3; n <= 30; ++n) check_graph(cycle_graph(n), 3);
  for (int n = 3; n <= 15; ++n) check_graph(star_graph(n), 3);
  for (int i = 0; i < 30; ++i) check_graph(random_tree(20 + i, rng), 3);

  return {pairs >= 1000 && mismatches == 0,
          fmt("pairs=%lld mismatches=%lld", pairs, mismatches)};
}

// ---------------------------------------------------------------------
// A2: the fast verdict never contradicts the exact oracle. Every graph
// on up to 7 vertices whose labeling succeeds is grouped by canonical
// form; each member must be oracle-isomorphic to its group representative
// and the representatives must be pairwise oracle-non-isomorphic, with
// iso_test agreeing throughout. Then a thousand random pairs at n <= 30.
Outcome run_a2() {
  long long contradictions = 0, oracle_undecided = 0;
  long long members = 0, rep_pairs = 0, strata = 0;

  // nullopt inner value = proven non-isomorphic; outer nullopt = budget ran
  // out, which is tracked but not held against either side.
  auto oracle = [&](const Graph& a, const Graph& b)
      -> std::optional<std::optional<std::vector<Vertex>>> {
    try {
      return constrained_isomorphism(a, b, {});
    } catch (const UndecidedError&) {
      ++oracle_undecided;
      return std::nullopt;
    }
  };

  for (int n = 1; n <= 7; ++n) {
    std::unordered_map<std::string, Graph> reps;
    testutil::for_each_graph(n, [&](const Graph& g) {
      CanonicalResult c = canonical_label(g);
      if (!c.ok()) return;
      std::string key = write_edge_list(c.form);
      auto it = reps.find(key);
      if (it == reps.end()) {
        reps.emplace(std::move(key), g);
        return;
      }
      ++members;
      if (iso_test(g, it->second) != IsoVerdict::Isomorphic) ++contradictions;
      auto w = oracle(g, it->second);
      if (w && (!*w || !valid_isomorphism(g, it->second, **w)))
        ++contradictions;
    });
    std::vector<const Graph*> rv;
    rv.reserve(reps.size());
    for (auto& [key, g] : reps) rv.push_back(&g);
    strata += static_cast<long long>(rv.size());
    for (std::size_t i = 0; i < rv.size(); ++i)
      for (std::size_t j = i + 1; j < rv.size(); ++j) {
        ++rep_pairs;
        if (iso_test(*rv[i], *rv[j]) != IsoVerdict::NonIsomorphic)
          ++contradictions;
        auto w = oracle(*rv[i], *rv[j]);
        if (w && *w) ++contradictions;
      }
  }

  Rng rng(derive_seed(202, "gate-iso", 0));
  long long random_pairs = 0;
  for (int t = 0; t < 1000; ++t) {
    int n = 5 + static_cast<int>(uniform_below(rng, 26));
    Graph a = gnp_sample(n, 0.15, rng);
    Graph b;
    if (t % 3 == 0) {
      b = relabel(a, random_permutation(n, rng));
    } else if (t % 3 == 1) {
      b = gnp_sample(n, 0.15, rng);
    } else {
      Graph c = relabel(a, random_permutation(n, rng));
      Vertex u = static_cast<Vertex>(uniform_below(rng, n));
      Vertex v = static_cast<Vertex>(uniform_below(rng, n));
      b = Graph(n);
      for (auto [x, y] : c.edges())
        if (!(x == std::min(u, v) && y == std::max(u, v))) b.add_edge(x, y);
      if (u != v && !c.has_edge(u, v)) b.add_edge(u, v);
    }
    ++random_pairs;
    IsoVerdict fast = iso_test(a, b);
    auto w = oracle(a, b);
    if (!w) continue;
    if (*w && !valid_isomorphism(a, b, **w)) ++contradictions;
    if (fast == IsoVerdict::Isomorphic && !*w) ++contradictions;
    if (fast == IsoVerdict::NonIsomorphic && *w) ++contradictions;
  }

  return {contradictions == 0,
          fmt("strata=%lld members=%lld rep_pairs=%lld random_pairs=%lld "
              "oracle_undecided=%lld contradictions=%lld",
              strata, members, rep_pairs, random_pairs, oracle_undecided,
              contradictions)};
}

// ---------------------------------------------------------------------
// A3: rigid 2-cores at n=2000, np=8. Two hundred seeded samples; the
// automorphism group of the 2-core must be trivial in at least the
// pinned fraction, with every returned generator independently verified
// as a real automorphism (an invalid generator or a claimed nontrivial
// order without a witness counts as a contradiction, not a failure).
Outcome run_a3() {
  const int trials = 200;
  std::atomic<long long> trivial{0}, contradictions{0}, undecided{0};
  parallel_for(trials, 1, [&](int idx) {
    Rng rng(derive_seed(303, "gate-rigidity", static_cast<std::uint64_t>(idx)));
    Graph g = gnp_sample(2000, 8.0 / 2000, rng);
    Graph core = induced_subgraph(g, two_core(g)).graph;
    AutGroup aut;
    try {
      aut = automorphism_group(core);
    } catch (const UndecidedError&) {
      ++undecided;
      return;
    }
    for (const auto& gen : aut.generators) {
      bool identity = true;
      for (std::size_t v = 0; v < gen.size(); ++v)
        if (gen[v] != static_cast<Vertex>(v)) identity = false;
      if (identity || !valid_isomorphism(core, core, gen)) ++contradictions;
    }
    if (aut.order > 1 && aut.generators.empty()) ++contradictions;
    if (aut.order == 1) ++trivial;
  });
  double rate = static_cast<double>(trivial) / trials;
  return {rate >= kA3MinTrivialRate && contradictions == 0,
          fmt("trivial=%lld/%d rate=%.3f contradictions=%lld undecided=%lld",
              trivial.load(), trials, rate, contradictions.load(),
              undecided.load())};
}

// ---------------------------------------------------------------------
// A4: the first moment identity, exactly, over the full rational grid
// m <= 10, k <= 4, step 1/20.
Outcome run_a4() {
  ModeFloorsGridResult r = verify_mode_floors_grid(10, 4, Rational(1, 20));
  return {r.failures == 0 && r.cases == 12760,
          fmt("cases=%lld failures=%lld", r.cases, r.failures)};
}

// ---------------------------------------------------------------------
// A5: vertices outside the 2-core at n=3000, np=8. No sample may reach
// n/10, and the median must land inside the envelope pinned by the pilot
// batches.
Outcome run_a5() {
  ExperimentConfig cfg;
  cfg.n = 3000;
  cfg.p = PSpec::c_over_n(8);
  cfg.trials = 100;
  cfg.seed = 505;
  ExperimentReport rep = run_core_size(cfg);
  long long big = rep.summary["tail_n10"]["count"].get<long long>();
  int median = rep.summary["outside_median"].get<int>();
  int max_outside = rep.summary["outside_max"].get<int>();
  bool pass = big == 0 && median >= kA5MedianLo && median <= kA5MedianHi;
  return {pass, fmt("freq_n10=%lld median=%d max=%d envelope=[%d,%d]", big,
                    median, max_outside, kA5MedianLo, kA5MedianHi)};
}

// ---------------------------------------------------------------------
// A6: the two-sided approximate equality agrees with the brute-force
// operation-space oracle: delete up to two elements, then decrease
// survivors by 1 or 2 with total decrease at most 4, on each side, and
// intersect the reachable sets. All pairs of multisets of size <= 4 over
// values 0..12, plus ten thousand sampled pairs up to size 8.
struct ReachOracle {
  std::map<std::vector<int>, std::uint32_t> ids;

  std::uint32_t intern(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    auto [it, fresh] =
        ids.emplace(std::move(v), static_cast<std::uint32_t>(ids.size()));
    (void)fresh;
    return it->second;
  }

  std::vector<std::uint32_t> reach(const std::vector<int>& base) {
    std::vector<std::uint32_t> out;
    const int n = static_cast<int>(base.size());
    std::vector<int> kept;
    std::vector<int> dec;
    for (int i = -1; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        if (i >= 0 && j == i) continue;
        kept.clear();
        for (int t = 0; t < n; ++t)
          if (t != i && t != j) kept.push_back(base[t]);
        const int k = static_cast<int>(kept.size());
        dec.assign(k, 0);
        auto walk = [&](auto&& self, int idx, int budget) -> void {
          if (idx == k) {
            std::vector<int> result(k);
            for (int t = 0; t < k; ++t) result[t] = kept[t] - dec[t];
            out.push_back(intern(std::move(result)));
            return;
          }
          for (int d = 0; d <= 2 && d <= budget; ++d) {
            dec[idx] = d;
            self(self, idx + 1, budget - d);
          }
        };
        walk(walk, 0, 4);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

bool sorted_intersect(const std::vector<std::uint32_t>& a,
                      const std::vector<std::uint32_t>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (a[i] > b[j])
      ++j;
    else
      return true;
  }
  return false;
}

Outcome run_a6() {
  std::vector<std::vector<int>> bases;
  std::vector<int> cur;
  auto enumerate = [&](auto&& self, int minval) -> void {
    bases.push_back(cur);
    if (cur.size() == 4) return;
    for (int v = minval; v <= 12; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  enumerate(enumerate, 0);

  ReachOracle oracle;
  std::vector<std::vector<std::uint32_t>> reach(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i)
    reach[i] = oracle.reach(bases[i]);

  long long checked = 0, disagreements = 0, positives = 0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    IntMultiset a(bases[i]);
    for (std::size_t j = i; j < bases.size(); ++j) {
      bool brute = sorted_intersect(reach[i], reach[j]);
      bool fast = approx_equal(a, IntMultiset(bases[j]));
      ++checked;
      if (brute) ++positives;
      if (brute != fast) ++disagreements;
    }
  }

  Rng rng(derive_seed(606, "gate-approx", 0));
  long long sampled = 0;
  for (int t = 0; t < 10000; ++t) {
    auto draw = [&]() {
      std::vector<int> v(uniform_below(rng, 9));
      for (int& x : v) x = static_cast<int>(uniform_below(rng, 13));
      return v;
    };
    std::vector<int> x = draw(), y = draw();
    bool brute = sorted_intersect(oracle.reach(x), oracle.reach(y));
    bool fast = approx_equal(IntMultiset(x), IntMultiset(y));
    ++sampled;
    if (brute != fast) ++disagreements;
  }

  return {disagreements == 0,
          fmt("all_pairs=%lld positives=%lld sampled=%lld disagreements=%lld",
              checked, positives, sampled, disagreements)};
}

// ---------------------------------------------------------------------
// A7: tree code equality is exactly isomorphism. Every labeled tree on
// up to 7 vertices (rooted anywhere) and up to 8 vertices (free), via
// Pruefer enumeration: equal codes must come with a verified explicit
// bijection from the position arrays, and distinct codes must make the
// class representatives brute-force non-isomorphic.
Outcome run_a7() {
  long long trees = 0, classes = 0, contradictions = 0;

  // Positions map each vertex to its canonical index; composing one with
  // the inverse of the other is the claimed isomorphism, verified edge
  // by edge so no property of the encoder is taken on faith.
  auto positions_match = [&](const Graph& a, const std::vector<int>& pos_a,
                             const Graph& b, const std::vector<int>& pos_b) {
    const int n = a.order();
    std::vector<Vertex> of_pos(n, -1), map(n, -1);
    for (int v = 0; v < n; ++v) of_pos[pos_b[v]] = v;
    for (int v = 0; v < n; ++v) map[v] = of_pos[pos_a[v]];
    return valid_isomorphism(a, b, map);
  };

  struct RootedRep {
    Graph tree;
    Vertex root;
    std::vector<int> position;
  };
  for (int n = 1; n <= 7; ++n) {
    std::map<std::string, RootedRep> reps;
    std::vector<int> seq(std::max(0, n - 2), 0);
    auto visit_tree = [&](const Graph& t) {
      for (Vertex r = 0; r < n; ++r) {
        RootedTreeCode code = rooted_tree_code(t, r);
        ++trees;
        auto it = reps.find(code.code);
        if (it == reps.end()) {
          reps.emplace(code.code, RootedRep{t, r, code.position});
          continue;
        }
        // Same code: the explicit bijection must check out, and it must
        // fix the root pair.
        const RootedRep& rep = it->second;
        if (!positions_match(t, code.position, rep.tree, rep.position) ||
            code.position[r] != 0)
          ++contradictions;
      }
    };
    auto sweep = [&](auto&& self, int idx) -> void {
      if (idx == static_cast<int>(seq.size())) {
        visit_tree(tree_from_pruefer(n, seq));
        return;
      }
      for (int v = 0; v < n; ++v) {
        seq[idx] = v;
        self(self, idx + 1);
      }
    };
    sweep(sweep, 0);

    // Distinct codes: brute-force scan over root-fixing permutations must
    // find no isomorphism.
    std::vector<const RootedRep*> rv;
    for (auto& [code, rep] : reps) rv.push_back(&rep);
    classes += static_cast<long long>(rv.size());
    for (std::size_t i = 0; i < rv.size(); ++i)
      for (std::size_t j = i + 1; j < rv.size(); ++j) {
        std::vector<Vertex> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        bool found = false;
        do {
          if (perm[rv[i]->root] != rv[j]->root) continue;
          if (valid_isomorphism(rv[i]->tree, rv[j]->tree, perm)) {
            found = true;
            break;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (found) ++contradictions;
      }
  }
  long long rooted_trees = trees, rooted_classes = classes;

  trees = 0;
  classes = 0;
  struct FreeRep {
    Graph tree;
    std::vector<int> position;
  };
  for (int n = 1; n <= 8; ++n) {
    std::map<std::string, FreeRep> reps;
    std::vector<int> seq(std::max(0, n - 2), 0);
    auto visit_tree = [&](const Graph& t) {
      ++trees;
      FreeTreeCode code = free_tree_code(t);
      auto it = reps.find(code.code);
      if (it == reps.end()) {
        reps.emplace(code.code, FreeRep{t, code.position});
        return;
      }
      if (!positions_match(t, code.position, it->second.tree,
                           it->second.position))
        ++contradictions;
    };
    auto sweep = [&](auto&& self, int idx) -> void {
      if (idx == static_cast<int>(seq.size())) {
        visit_tree(tree_from_pruefer(n, seq));
        return;
      }
      for (int v = 0; v < n; ++v) {
        seq[idx] = v;
        self(self, idx + 1);
      }
    };
    sweep(sweep, 0);

    std::vector<const FreeRep*> rv;
    for (auto& [code, rep] : reps) rv.push_back(&rep);
    classes += static_cast<long long>(rv.size());
    for (std::size_t i = 0; i < rv.size(); ++i)
      for (std::size_t j = i + 1; j < rv.size(); ++j)
        if (testutil::brute_force_isomorphic(rv[i]->tree, rv[j]->tree))
          ++contradictions;
  }

  return {contradictions == 0,
          fmt("rooted=%lld/%lld_classes free=%lld/%lld_classes "
              "contradictions=%lld",
              rooted_trees, rooted_classes, trees, classes, contradictions)};
}

// ---------------------------------------------------------------------
// A8: deck reconstruction at n=80, p=1.8 ln n / n. Fifty seeded trials
// through the experiment harness; a passing trial reconstructs a graph
// the exact oracle confirms isomorphic, and success already implies the
// rebuilt deck reproduced the input cards (the reconstructor re-decks
// and compares before returning a graph).
Outcome run_a8() {
  ExperimentConfig cfg;
  cfg.n = 80;
  cfg.p = PSpec::parse("1.8logn/n");
  cfg.trials = 50;
  cfg.seed = 808;
  ExperimentReport rep = run_recon(cfg);
  double rate = rep.pass_rate();
  return {rate >= kA8MinReconRate,
          fmt("pass=%lld/%d rate=%.3f undecided=%lld",
              rep.count(TrialOutcome::Pass), cfg.trials, rate,
              rep.count(TrialOutcome::Undecided))};
}

// ---------------------------------------------------------------------
// A9: the configuration census at n=500, np=10 finds no compatible pair
// among a million sampled (phi, psi) per trial, in at least 19 of 20
// trials.
Outcome run_a9() {
  ExperimentConfig cfg;
  cfg.n = 500;
  cfg.p = PSpec::c_over_n(10);
  cfg.trials = 20;
  cfg.seed = 909;
  cfg.census_pairs = 1'000'000;
  ExperimentReport rep = run_census(cfg);
  long long zero = rep.summary["zero_compatible_trials"].get<long long>();
  long long compat = rep.summary["compatible_total"].get<long long>();
  return {zero >= kA9MinZeroTrials,
          fmt("zero_compatible_trials=%lld/20 compatible_total=%lld", zero,
              compat)};
}

// ---------------------------------------------------------------------
// A10: reports are a pure function of the config. Re-running with other
// worker counts must give byte-identical JSON.
Outcome run_a10() {
  auto dump_with = [](auto&& runner, ExperimentConfig cfg, int workers) {
    cfg.workers = workers;
    return runner(cfg).to_json().dump(2);
  };

  ExperimentConfig core;
  core.n = 100;
  core.p = PSpec::c_over_n(6);
  core.trials = 25;
  core.seed = 1010;

  ExperimentConfig rigidity;
  rigidity.n = 50;
  rigidity.p = PSpec::c_over_n(8);
  rigidity.trials = 10;
  rigidity.seed = 1011;

  ExperimentConfig recon;
  recon.n = 24;
  recon.p = PSpec::parse("1.8logn/n");
  recon.trials = 4;
  recon.seed = 1012;

  ExperimentConfig census;
  census.n = 60;
  census.p = PSpec::c_over_n(6);
  census.trials = 3;
  census.census_pairs = 2000;
  census.seed = 1013;

  int checked = 0, identical = 0;
  auto compare = [&](auto&& runner, const ExperimentConfig& cfg) {
    ++checked;
    std::string one = dump_with(runner, cfg, 1);
    if (one == dump_with(runner, cfg, 2) && one == dump_with(runner, cfg, 4))
      ++identical;
  };
  compare([](const ExperimentConfig& c) { return run_core_size(c); }, core);
  compare([](const ExperimentConfig& c) { return run_rigidity(c); }, rigidity);
  compare([](const ExperimentConfig& c) { return run_recon(c); }, recon);
  compare([](const ExperimentConfig& c) { return run_census(c); }, census);

  return {checked == identical,
          fmt("experiments=%d byte_identical=%d", checked, identical)};
}

}  // namespace

int main(int argc, char** argv) {
  using Runner = Outcome (*)();
  const std::vector<std::pair<std::string, Runner>> gate = {
      {"A1", run_a1}, {"A2", run_a2}, {"A3", run_a3}, {"A4", run_a4},
      {"A5", run_a5}, {"A6", run_a6}, {"A7", run_a7}, {"A8", run_a8},
      {"A9", run_a9}, {"A10", run_a10},
  };

  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const std::string& w : wanted) {
    bool known = false;
    for (const auto& [name, fn] : gate) known |= name == w;
    if (!known) {
      std::fprintf(stderr, "unknown criterion: %s\n", w.c_str());
      return 2;
    }
  }

  bool all_pass = true;
  for (const auto& [name, fn] : gate) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), name) == wanted.end())
      continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    std::printf("%s %s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass &= o.pass;
  }
  return all_pass ? 0 : 1;
}
