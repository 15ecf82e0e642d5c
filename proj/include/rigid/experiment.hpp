#pragma once

// Monte Carlo harnesses over the library's oracles. Trial t of experiment
// `name` always draws from derive_seed(master, name, t), so the worker
// count changes throughput and nothing else; reports serialize neither the
// worker count nor (by default) timings, and are therefore byte-identical
// across reruns of the same config. Budget-starved trials land in their
// own "undecided" bucket, never in pass or fail.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rigid/aut.hpp"
#include "rigid/canonical.hpp"
#include "rigid/config.hpp"
#include "rigid/core.hpp"
#include "rigid/cycles.hpp"
#include "rigid/graph.hpp"
#include "rigid/random.hpp"
#include "rigid/reconstruct.hpp"
#include "rigid/undecided.hpp"

namespace rigid {

using Json = nlohmann::ordered_json;

namespace detail {

/// Shortest round-trip decimal text; locale-independent.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double out = 0.0;
  const char* last = text.data() + text.size();
  auto res = std::from_chars(text.data(), last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::domain_error("p-spec: cannot parse number '" +
                            std::string(text) + "'");
  return out;
}

}  // namespace detail

/// Edge probability, either explicit or scaled: "0.004" means p itself,
/// "8/n" means 8/n, "1.8logn/n" means 1.8*ln(n)/n.
struct PSpec {
  enum class Kind { Explicit, COverN, CLogNOverN };

  Kind kind = Kind::Explicit;
  double value = 0.0;

  static PSpec explicit_p(double p) { return {Kind::Explicit, p}; }
  static PSpec c_over_n(double c) { return {Kind::COverN, c}; }
  static PSpec c_logn_over_n(double c) { return {Kind::CLogNOverN, c}; }

  static PSpec parse(std::string_view text) {
    auto strip_suffix = [&](std::string_view suffix) {
      std::string_view head = text.substr(0, text.size() - suffix.size());
      if (head.ends_with("*")) head.remove_suffix(1);
      return head;
    };
    if (text.ends_with("logn/n"))
      return c_logn_over_n(detail::parse_double(strip_suffix("logn/n")));
    if (text.ends_with("/n"))
      return c_over_n(detail::parse_double(strip_suffix("/n")));
    return explicit_p(detail::parse_double(text));
  }

  double resolve(int n) const {
    if (n < 0) throw std::domain_error("p-spec: negative n");
    double p = 0.0;
    switch (kind) {
      case Kind::Explicit:
        p = value;
        break;
      case Kind::COverN:
        p = n >= 2 ? value / n : 0.0;
        break;
      case Kind::CLogNOverN:
        p = n >= 2 ? value * std::log(n) / n : 0.0;
        break;
    }
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("p-spec: resolved p outside [0,1]");
    return p;
  }

  std::string text() const {
    switch (kind) {
      case Kind::COverN:
        return detail::format_double(value) + "/n";
      case Kind::CLogNOverN:
        return detail::format_double(value) + "logn/n";
      default:
        return detail::format_double(value);
    }
  }
};

struct ExperimentConfig {
  int n = 0;
  PSpec p;
  int trials = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  long long budget = kDefaultSearchBudget;  // per oracle call
  long long census_pairs = 1'000'000;       // census only: sampled pairs/trial
  int census_max_k = 0;                     // census only: 0 = default cap
  bool include_timings = false;

  void validate() const {
    if (n < 0) throw std::domain_error("experiment: negative n");
    if (trials < 1) throw std::domain_error("experiment: trials < 1");
    if (workers < 1) throw std::domain_error("experiment: workers < 1");
    if (budget < 0) throw std::domain_error("experiment: negative budget");
    if (census_pairs < 0)
      throw std::domain_error("experiment: negative census pair count");
  }
};

enum class TrialOutcome { Pass, Fail, Undecided };

inline const char* to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::Pass:
      return "pass";
    case TrialOutcome::Fail:
      return "fail";
    default:
      return "undecided";
  }
}

struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  TrialOutcome outcome = TrialOutcome::Undecided;
  Json detail;         // harness-specific witness summary
  double millis = 0.0; // serialized only on request
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval at 95% confidence.
inline Interval wilson_interval(long long successes, long long total) {
  if (total <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double nt = static_cast<double>(total);
  const double ph = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = ph + z2 / (2.0 * nt);
  const double half = z * std::sqrt(ph * (1.0 - ph) / nt + z2 / (4.0 * nt * nt));
  return {std::max(0.0, (centre - half) / denom),
          std::min(1.0, (centre + half) / denom)};
}

struct ExperimentReport {
  std::string name;
  ExperimentConfig config;
  double p = 0.0;         // resolved edge probability
  bool regime_ok = true;  // (n,p) within the range the statement covers
  std::vector<TrialRecord> trials;
  Json summary = Json::object();  // harness-specific aggregate fields

  long long count(TrialOutcome o) const {
    return std::count_if(trials.begin(), trials.end(),
                         [&](const TrialRecord& t) { return t.outcome == o; });
  }

  double pass_rate() const {
    return trials.empty() ? 0.0
                          : static_cast<double>(count(TrialOutcome::Pass)) /
                                static_cast<double>(trials.size());
  }

  Json to_json() const {
    Json j;
    j["experiment"] = name;
    Json c;
    c["n"] = config.n;
    c["p_spec"] = config.p.text();
    c["p"] = p;
    c["trials"] = config.trials;
    c["seed"] = config.seed;
    c["budget"] = config.budget;
    j["config"] = std::move(c);
    j["regime_ok"] = regime_ok;

    const long long pass = count(TrialOutcome::Pass);
    const long long fail = count(TrialOutcome::Fail);
    const long long undecided = count(TrialOutcome::Undecided);
    Json agg;
    agg["pass"] = pass;
    agg["fail"] = fail;
    agg["undecided"] = undecided;
    agg["pass_rate"] = pass_rate();
    Interval ci = wilson_interval(pass, static_cast<long long>(trials.size()));
    agg["pass_ci95"] = Json{{"lo", ci.lo}, {"hi", ci.hi}};
    for (const auto& [key, val] : summary.items()) agg[key] = val;
    j["aggregate"] = std::move(agg);

    Json rows = Json::array();
    for (const TrialRecord& t : trials) {
      Json r;
      r["index"] = t.index;
      r["seed"] = t.seed;
      r["outcome"] = to_string(t.outcome);
      if (config.include_timings) r["millis"] = t.millis;
      if (!t.detail.is_null()) r["detail"] = t.detail;
      rows.push_back(std::move(r));
    }
    j["trials"] = std::move(rows);
    return j;
  }

  /// Two lines: header and values, covering the config identity plus every
  /// aggregate field (nested objects flattened with dots).
  std::string to_csv() const {
    Json j = to_json();
    std::vector<std::pair<std::string, std::string>> cells;
    cells.emplace_back("experiment", name);
    cells.emplace_back("n", std::to_string(config.n));
    cells.emplace_back("p_spec", config.p.text());
    cells.emplace_back("p", detail::format_double(p));
    cells.emplace_back("trials", std::to_string(config.trials));
    cells.emplace_back("seed", std::to_string(config.seed));
    auto flatten = [&](auto&& self, const Json& node,
                       const std::string& prefix) -> void {
      if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
          self(self, it.value(),
               prefix.empty() ? it.key() : prefix + "." + it.key());
      } else if (node.is_string()) {
        cells.emplace_back(prefix, node.get<std::string>());
      } else {
        cells.emplace_back(prefix, node.dump());
      }
    };
    flatten(flatten, j["aggregate"], "");
    std::string header, row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) {
        header += ',';
        row += ',';
      }
      header += cells[i].first;
      row += cells[i].second;
    }
    return header + "\n" + row + "\n";
  }
};

namespace detail {

/// Dispatches trial indices to workers and collects records by index.
/// Each trial gets a fresh Rng from its derived seed, so the assignment
/// of trials to threads is irrelevant to the results. UndecidedError
/// marks the trial undecided; any other exception aborts the experiment.
template <typename TrialFn>
inline std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg,
                                           std::string_view name,
                                           TrialFn&& fn) {
  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= cfg.trials) return;
      TrialRecord& rec = records[idx];
      rec.index = idx;
      rec.seed = derive_seed(cfg.seed, name, static_cast<std::uint64_t>(idx));
      auto t0 = std::chrono::steady_clock::now();
      try {
        Rng rng(rec.seed);
        fn(rec, rng);
      } catch (const UndecidedError& e) {
        rec.outcome = TrialOutcome::Undecided;
        rec.detail = Json{{"error", e.what()}};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      rec.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    }
  };
  if (cfg.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(cfg.workers);
    for (int i = 0; i < cfg.workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

/// The rigidity statements cover p between omega(1/n) and n^(-1/2); at
/// finite n we treat np >= 4 with p <= n^(-1/2) as "in regime". Outside
/// it the run still happens, but the report flags that the theorem makes
/// no claim there.
inline bool rigidity_regime(int n, double p) {
  return n >= 2 && n * p >= 4.0 && p <= std::pow(static_cast<double>(n), -0.5);
}

/// Reconstruction needs p around log n / n; the argument covers roughly
/// [(1-eps) log n / n, (5/2+eps) log n / n].
inline bool recon_regime(int n, double p) {
  if (n < 3) return false;
  double ratio = p * n / std::log(static_cast<double>(n));
  return ratio >= 0.8 && ratio <= 2.7;
}

}  // namespace detail

/// Samples G(n,p), extracts the 2-core, and asks the exact oracle whether
/// the induced core subgraph is rigid (trivial automorphism group). An
/// empty core passes vacuously.
inline ExperimentReport run_rigidity(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "rigidity";
  rep.config = cfg;
  rep.p = cfg.p.resolve(cfg.n);
  rep.regime_ok = detail::rigidity_regime(cfg.n, rep.p);
  rep.trials =
      detail::run_trials(cfg, rep.name, [&](TrialRecord& rec, Rng& rng) {
        Graph g = gnp_sample(cfg.n, rep.p, rng);
        VertexSet core = two_core(g);
        rec.detail = Json::object();
        rec.detail["core_size"] = core.size();
        if (core.empty()) {
          rec.detail["aut_order"] = "1";
          rec.outcome = TrialOutcome::Pass;
          return;
        }
        AutGroup aut =
            automorphism_group(induced_subgraph(g, core).graph, cfg.budget);
        rec.detail["aut_order"] = aut.order.str();
        rec.outcome =
            aut.order == 1 ? TrialOutcome::Pass : TrialOutcome::Fail;
      });
  return rep;
}

/// Samples G, relabels it by a random permutation, and requires the
/// labeling outcomes to agree: same success/failure kind, and identical
/// canonical forms on success. The success rate itself is recorded as the
/// measured failure probability of the fast labeling.
inline ExperimentReport run_canon_invariance(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "canon-invariance";
  rep.config = cfg;
  rep.p = cfg.p.resolve(cfg.n);
  rep.regime_ok = detail::rigidity_regime(cfg.n, rep.p);
  rep.trials =
      detail::run_trials(cfg, rep.name, [&](TrialRecord& rec, Rng& rng) {
        Graph g = gnp_sample(cfg.n, rep.p, rng);
        Graph h = relabel(g, random_permutation(cfg.n, rng));
        CanonicalResult a = canonical_label(g);
        CanonicalResult b = canonical_label(h);
        rec.detail = Json::object();
        rec.detail["success"] = a.ok();
        if (!a.ok()) rec.detail["violation"] = a.violation->property;
        if (a.ok() != b.ok() ||
            (!a.ok() && a.violation->property != b.violation->property)) {
          rec.detail["mismatch"] = "outcome-kind";
          rec.outcome = TrialOutcome::Fail;
          return;
        }
        if (a.ok() && !(a.form == b.form)) {
          rec.detail["mismatch"] = "canonical-form";
          rec.outcome = TrialOutcome::Fail;
          return;
        }
        rec.outcome = TrialOutcome::Pass;
      });
  long long successes = 0;
  for (const TrialRecord& t : rep.trials)
    if (t.detail.is_object() && t.detail.value("success", false)) ++successes;
  rep.summary["labeling_success"] = successes;
  rep.summary["labeling_success_rate"] =
      rep.trials.empty()
          ? 0.0
          : static_cast<double>(successes) / static_cast<double>(rep.trials.size());
  Interval ci =
      wilson_interval(successes, static_cast<long long>(rep.trials.size()));
  rep.summary["labeling_success_ci95"] = Json{{"lo", ci.lo}, {"hi", ci.hi}};
  return rep;
}

/// Records how many vertices fall outside the 2-core per sample and the
/// empirical tail frequencies at n*e^(-np), n/20 and n/10. Every
/// completed trial passes; the interest is in the summary.
inline ExperimentReport run_core_size(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "core-size";
  rep.config = cfg;
  rep.p = cfg.p.resolve(cfg.n);
  rep.regime_ok = cfg.n >= 2 && cfg.n * rep.p >= 4.0;
  rep.trials =
      detail::run_trials(cfg, rep.name, [&](TrialRecord& rec, Rng& rng) {
        Graph g = gnp_sample(cfg.n, rep.p, rng);
        int outside = cfg.n - static_cast<int>(two_core(g).size());
        rec.detail = Json{{"outside_core", outside}};
        rec.outcome = TrialOutcome::Pass;
      });
  std::vector<int> sizes;
  sizes.reserve(rep.trials.size());
  for (const TrialRecord& t : rep.trials)
    sizes.push_back(t.detail.value("outside_core", 0));
  std::sort(sizes.begin(), sizes.end());
  auto tail = [&](double x) {
    long long cnt = 0;
    for (int s : sizes)
      if (s >= x) ++cnt;
    Json j;
    j["x"] = x;
    j["count"] = cnt;
    j["freq"] = sizes.empty()
                    ? 0.0
                    : static_cast<double>(cnt) / static_cast<double>(sizes.size());
    return j;
  };
  const double np = cfg.n * rep.p;
  rep.summary["tail_exp"] = tail(cfg.n * std::exp(-np));
  rep.summary["tail_n20"] = tail(cfg.n / 20.0);
  rep.summary["tail_n10"] = tail(cfg.n / 10.0);
  if (!sizes.empty()) {
    rep.summary["outside_min"] = sizes.front();
    rep.summary["outside_median"] = sizes[(sizes.size() - 1) / 2];
    rep.summary["outside_max"] = sizes.back();
  }
  return rep;
}

/// Samples G, builds its deck, runs the reconstructor, and checks the
/// result against G with the exact isomorphism oracle.
inline ExperimentReport run_recon(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "recon";
  rep.config = cfg;
  rep.p = cfg.p.resolve(cfg.n);
  rep.regime_ok = detail::recon_regime(cfg.n, rep.p);
  rep.trials =
      detail::run_trials(cfg, rep.name, [&](TrialRecord& rec, Rng& rng) {
        Graph g = gnp_sample(cfg.n, rep.p, rng);
        ReconResult r = reconstruct_from_deck(deck(g, cfg.budget), cfg.budget);
        rec.detail = Json::object();
        if (!r.ok()) {
          rec.detail["failure_step"] = r.failure_step;
          rec.detail["failure_detail"] = r.detail;
          rec.outcome = TrialOutcome::Fail;
          return;
        }
        IsoVerdict v = iso_test(g, *r.graph);
        if (v == IsoVerdict::Undecided)
          v = constrained_isomorphism(g, *r.graph, {}, cfg.budget)
                  ? IsoVerdict::Isomorphic
                  : IsoVerdict::NonIsomorphic;
        if (v == IsoVerdict::Isomorphic) {
          rec.outcome = TrialOutcome::Pass;
        } else {
          rec.detail["failure_step"] = "verification";
          rec.detail["failure_detail"] = "output not isomorphic to the input";
          rec.outcome = TrialOutcome::Fail;
        }
      });
  Json steps = Json::object();
  for (const TrialRecord& t : rep.trials) {
    if (t.outcome != TrialOutcome::Fail || !t.detail.is_object()) continue;
    std::string step = t.detail.value("failure_step", std::string("unknown"));
    steps[step] = steps.value(step, 0) + 1;
  }
  rep.summary["failures_by_step"] = std::move(steps);
  return rep;
}

/// Samples G and runs the configuration census on it: a trial passes when
/// no compatible configuration is found and no probe was budget-starved.
inline ExperimentReport run_census(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.name = "census";
  rep.config = cfg;
  rep.p = cfg.p.resolve(cfg.n);
  rep.regime_ok = detail::rigidity_regime(cfg.n, rep.p);
  const int max_k =
      cfg.census_max_k > 0 ? cfg.census_max_k : cycle_length_cap(cfg.n);
  rep.summary["max_k"] = max_k;
  rep.summary["pairs_per_trial"] = cfg.census_pairs;
  rep.trials =
      detail::run_trials(cfg, rep.name, [&](TrialRecord& rec, Rng& rng) {
        Graph g = gnp_sample(cfg.n, rep.p, rng);
        CensusReport c =
            census_compatible(g, max_k, cfg.census_pairs,
                              derive_seed(rec.seed, "census-pairs", 0),
                              cfg.budget);
        rec.detail = Json::object();
        rec.detail["exhaustive"] = c.exhaustive;
        rec.detail["pairs_examined"] = c.pairs_examined;
        rec.detail["type1"] = c.type1;
        rec.detail["type2"] = c.type2;
        rec.detail["compatible"] = c.compatible_type1 + c.compatible_type2;
        rec.detail["undecided_probes"] = c.undecided;
        if (c.compatible_type1 + c.compatible_type2 > 0)
          rec.outcome = TrialOutcome::Fail;
        else if (c.undecided > 0)
          rec.outcome = TrialOutcome::Undecided;
        else
          rec.outcome = TrialOutcome::Pass;
      });
  long long compatible_total = 0, examined = 0;
  for (const TrialRecord& t : rep.trials) {
    compatible_total += t.detail.value("compatible", 0LL);
    examined += t.detail.value("pairs_examined", 0LL);
  }
  rep.summary["pairs_examined_total"] = examined;
  rep.summary["compatible_total"] = compatible_total;
  rep.summary["zero_compatible_trials"] =
      std::count_if(rep.trials.begin(), rep.trials.end(),
                    [](const TrialRecord& t) {
                      return t.detail.is_object() &&
                             t.detail.value("compatible", 1LL) == 0;
                    });
  return rep;
}

}  // namespace rigid
