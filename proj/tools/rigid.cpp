// Command line front end over the library: sampling, 2-core analysis,
// canonical labeling, isomorphism testing, automorphism groups, the
// configuration census, decks and reconstruction, the multinomial
// checks, and the Monte Carlo harnesses.
//
// Exit codes: 0 ok, 1 negative/failed result, 2 undecided (budget), 3
// usage or malformed input.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rigid/aut.hpp"
#include "rigid/canonical.hpp"
#include "rigid/config.hpp"
#include "rigid/core.hpp"
#include "rigid/cycles.hpp"
#include "rigid/experiment.hpp"
#include "rigid/graph.hpp"
#include "rigid/io.hpp"
#include "rigid/prob.hpp"
#include "rigid/random.hpp"
#include "rigid/reconstruct.hpp"
#include "rigid/undecided.hpp"

namespace {

using rigid::Graph;
using rigid::Json;

struct Opts {
  // global
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  int workers = 1;

  // shared by several subcommands
  std::string in = "-";
  std::string in_b;
  int n = 0;
  std::string p = "0";
  bool strict = false;
  bool partition = false;
  bool core_only = false;
  long long budget = rigid::kDefaultSearchBudget;

  // experiment / census
  std::string experiment_name;
  int trials = 1;
  long long pairs = 1'000'000;
  int max_k = 0;
  bool timings = false;

  // deck / recon
  std::string deck_dir;

  // prob
  int m = 0;
  std::vector<double> probs;
  std::vector<int> m_values;
  int k = 0;
  double rate = 0.25;
  int max_categories = 12;
  int max_m = 0;
  std::string grid;
};

Graph load_graph(const std::string& path) {
  if (path == "-") return rigid::read_edge_list(std::cin);
  std::ifstream f(path);
  if (!f) throw std::domain_error("cannot open input file: " + path);
  return rigid::read_edge_list(f);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::domain_error("cannot open output file: " + out_path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// CSV for a flat object: one header line, one value line.
std::string flat_csv(const Json& j) {
  std::string header, row;
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) {
      header += ',';
      row += ',';
    }
    first = false;
    header += it.key();
    row += it.value().is_string() ? it.value().get<std::string>()
                                  : it.value().dump();
  }
  return header + "\n" + row + "\n";
}

int cmd_gen(const Opts& o) {
  double p = rigid::PSpec::parse(o.p).resolve(o.n);
  rigid::Rng rng(o.seed);
  emit(rigid::write_edge_list(rigid::gnp_sample(o.n, p, rng)), o.out);
  return 0;
}

int cmd_core(const Opts& o) {
  Graph g = load_graph(o.in);
  rigid::CorePartition part = rigid::core_partition(g);
  Json j;
  j["n"] = g.order();
  j["core_size"] = part.core.size();
  j["pendant_trees"] = part.pendant_trees.size();
  j["acyclic_components"] = part.acyclic_components.size();
  if (o.format == "csv") {
    emit(flat_csv(j), o.out);
    return 0;
  }
  j["core_vertices"] = part.core;
  if (o.partition) {
    Json trees = Json::array();
    for (const rigid::PendantTree& t : part.pendant_trees)
      trees.push_back(Json{{"attach", t.attach},
                           {"root", t.root},
                           {"vertices", t.vertices}});
    j["pendant_tree_list"] = std::move(trees);
    j["acyclic_component_list"] = part.acyclic_components;
  }
  emit(dump(j), o.out);
  return 0;
}

int cmd_canon(const Opts& o) {
  Graph g = load_graph(o.in);
  rigid::CanonicalResult r = rigid::canonical_label(g, o.strict);
  Json j;
  j["ok"] = r.ok();
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  if (r.ok()) {
    j["labeling"] = r.labeling;
    if (o.out.empty() || o.out == "-") {
      j["form"] = rigid::write_edge_list(r.form);
    } else {
      emit(rigid::write_edge_list(r.form), o.out);
      j["form_file"] = o.out;
    }
  } else {
    j["violation"] =
        Json{{"property", r.violation->property}, {"detail", r.violation->detail}};
  }
  std::cout << dump(j);
  return r.ok() ? 0 : 1;
}

int cmd_iso(const Opts& o) {
  Graph a = load_graph(o.in);
  Graph b = load_graph(o.in_b);
  rigid::IsoVerdict v = rigid::iso_test(a, b, o.strict);
  Json j;
  j["verdict"] = v == rigid::IsoVerdict::Isomorphic      ? "isomorphic"
                 : v == rigid::IsoVerdict::NonIsomorphic ? "non-isomorphic"
                                                         : "undecided";
  emit(dump(j), o.out);
  if (v == rigid::IsoVerdict::Isomorphic) return 0;
  return v == rigid::IsoVerdict::NonIsomorphic ? 1 : 2;
}

int cmd_aut(const Opts& o) {
  Graph g = load_graph(o.in);
  if (o.core_only) g = rigid::induced_subgraph(g, rigid::two_core(g)).graph;
  rigid::AutGroup grp = rigid::automorphism_group(g, o.budget);
  Json j;
  j["order"] = grp.order.str();
  j["generators"] = grp.generators;
  emit(dump(j), o.out);
  return 0;
}

int cmd_census(const Opts& o) {
  Graph g = load_graph(o.in);
  int max_k = o.max_k > 0 ? o.max_k : rigid::cycle_length_cap(g.order());
  rigid::CensusReport rep =
      rigid::census_compatible(g, max_k, o.pairs, o.seed, o.budget);
  Json j;
  j["max_k"] = max_k;
  j["exhaustive"] = rep.exhaustive;
  j["pairs_examined"] = rep.pairs_examined;
  j["type1"] = rep.type1;
  j["type2"] = rep.type2;
  j["compatible_type1"] = rep.compatible_type1;
  j["compatible_type2"] = rep.compatible_type2;
  j["undecided"] = rep.undecided;
  emit(o.format == "csv" ? flat_csv(j) : dump(j), o.out);
  return 0;
}

int cmd_deck(const Opts& o) {
  Graph g = load_graph(o.in);
  if (o.out.empty() || o.out == "-")
    throw std::domain_error("deck: --out DIR is required");
  rigid::Deck dk = rigid::deck(g, o.budget);
  std::filesystem::create_directories(o.out);
  for (std::size_t i = 0; i < dk.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "card_%04zu.txt", i);
    std::ofstream f(std::filesystem::path(o.out) / name);
    if (!f) throw std::domain_error(std::string("cannot write ") + name);
    rigid::write_edge_list(f, dk[i].form);
  }
  Json j;
  j["n"] = g.order();
  j["cards"] = dk.size();
  j["dir"] = o.out;
  std::cout << dump(j);
  return 0;
}

int cmd_recon(const Opts& o) {
  if (o.deck_dir.empty()) throw std::domain_error("recon: --deck DIR is required");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(o.deck_dir))
    if (e.is_regular_file() && e.path().extension() == ".txt")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::domain_error("recon: no .txt cards in " + o.deck_dir);
  rigid::Deck dk;
  for (const auto& path : files) {
    std::ifstream f(path);
    if (!f) throw std::domain_error("cannot open card: " + path.string());
    // Cards may arrive relabeled arbitrarily; the deck-equality check at
    // the end compares canonical forms, so normalize on load.
    rigid::CanonAny c =
        rigid::canonical_form_any(rigid::read_edge_list(f), o.budget);
    dk.push_back({std::move(c.form), c.via_exhaustive});
  }
  rigid::ReconResult r = rigid::reconstruct_from_deck(dk, o.budget);
  if (!r.ok()) {
    Json j;
    j["ok"] = false;
    j["failure_step"] = r.failure_step;
    j["detail"] = r.detail;
    std::cout << dump(j);
    return 1;
  }
  if (o.out.empty() || o.out == "-") {
    emit(rigid::write_edge_list(*r.graph), o.out);
  } else {
    emit(rigid::write_edge_list(*r.graph), o.out);
    Json j;
    j["ok"] = true;
    j["out"] = o.out;
    std::cout << dump(j);
  }
  return 0;
}

int cmd_prob_verify(const Opts& o) {
  Json j;
  if (!o.grid.empty()) {
    rigid::Rational step = rigid::parse_decimal_rational(o.grid);
    auto res = rigid::verify_mode_floors_grid(o.max_m, o.max_k, step);
    j["max_m"] = o.max_m;
    j["max_k"] = o.max_k;
    j["grid"] = o.grid;
    j["cases"] = res.cases;
    j["failures"] = res.failures;
    j["holds"] = res.all_hold();
    emit(dump(j), o.out);
    return res.all_hold() ? 0 : 1;
  }
  if (o.probs.empty())
    throw std::invalid_argument(
        "verify-floors needs either --m/--p or --max-m/--max-k/--grid");
  bool holds = rigid::verify_mode_floors(o.m, o.probs);
  j["m"] = o.m;
  j["p"] = o.probs;
  j["holds"] = holds;
  emit(dump(j), o.out);
  return holds ? 0 : 1;
}

int cmd_prob_mode(const Opts& o) {
  rigid::MultinomialMode mode = rigid::multinomial_mode(o.m, o.probs, o.budget);
  Json j;
  j["m"] = o.m;
  j["counts"] = mode.counts;
  j["pmax"] = mode.pmax;
  emit(dump(j), o.out);
  return 0;
}

int cmd_prob_profile(const Opts& o) {
  auto rows = rigid::pi_decay_profile(o.k, o.rate, o.m_values,
                                      o.max_categories, o.budget);
  if (o.format == "csv") {
    std::string text = "m,pi,normalized,truncated_mass,undecided\n";
    for (const auto& r : rows) {
      text += std::to_string(r.m) + ',' + rigid::detail::format_double(r.pi) +
              ',' + rigid::detail::format_double(r.normalized) + ',' +
              rigid::detail::format_double(r.truncated_mass) + ',' +
              (r.undecided ? "true" : "false") + '\n';
    }
    emit(text, o.out);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["m"] = r.m;
      row["pi"] = r.pi;
      row["normalized"] = r.normalized;  // NaN serializes as null
      row["truncated_mass"] = r.truncated_mass;
      row["undecided"] = r.undecided;
      arr.push_back(std::move(row));
    }
    Json j;
    j["k"] = o.k;
    j["p"] = o.rate;
    j["rows"] = std::move(arr);
    emit(dump(j), o.out);
  }
  return 0;
}

int cmd_experiment(const Opts& o) {
  rigid::ExperimentConfig cfg;
  cfg.n = o.n;
  cfg.p = rigid::PSpec::parse(o.p);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.budget = o.budget;
  cfg.census_pairs = o.pairs;
  cfg.census_max_k = o.max_k;
  cfg.include_timings = o.timings;
  rigid::ExperimentReport rep;
  if (o.experiment_name == "rigidity")
    rep = rigid::run_rigidity(cfg);
  else if (o.experiment_name == "canon")
    rep = rigid::run_canon_invariance(cfg);
  else if (o.experiment_name == "core-size")
    rep = rigid::run_core_size(cfg);
  else if (o.experiment_name == "recon")
    rep = rigid::run_recon(cfg);
  else if (o.experiment_name == "census")
    rep = rigid::run_census(cfg);
  else
    throw std::domain_error("unknown experiment: " + o.experiment_name);
  emit(o.format == "csv" ? rep.to_csv() : dump(rep.to_json()), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Opts o;
  CLI::App app{
      "sparse random graph toolkit: G(n,p) sampling, 2-core analysis, "
      "canonical labeling, isomorphism and automorphisms, configuration "
      "census, decks and reconstruction, multinomial checks, experiments"};
  app.require_subcommand(1);

  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "output path ('-' or empty = stdout)");
  app.add_option("--workers", o.workers, "worker threads")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "sample a G(n,p) graph");
  gen->add_option("--n", o.n, "vertex count")->required();
  gen->add_option("--p", o.p, "edge probability: 0.004 | 8/n | 1.8logn/n")
      ->required();

  auto* core = app.add_subcommand("core", "2-core partition of a graph");
  core->add_option("--in", o.in, "edge-list file ('-' = stdin)");
  core->add_flag("--partition", o.partition,
                 "include pendant trees and acyclic components");

  auto* canon = app.add_subcommand("canon", "canonical labeling");
  canon->add_option("--in", o.in, "edge-list file ('-' = stdin)");
  canon->add_flag("--strict", o.strict,
                  "fail on any structural property violation");

  auto* iso = app.add_subcommand("iso", "isomorphism test of two graphs");
  iso->add_option("a", o.in, "first edge-list file")->required();
  iso->add_option("b", o.in_b, "second edge-list file")->required();
  iso->add_flag("--strict", o.strict,
                "fail labeling on any structural property violation");

  auto* aut = app.add_subcommand("aut", "automorphism group");
  aut->add_option("--in", o.in, "edge-list file ('-' = stdin)");
  aut->add_option("--budget", o.budget, "search node budget");
  aut->add_flag("--core-only", o.core_only,
                "restrict to the subgraph induced by the 2-core");

  auto* census =
      app.add_subcommand("census", "configuration census over one graph");
  census->add_option("--in", o.in, "edge-list file ('-' = stdin)");
  census->add_option("--max-k", o.max_k, "largest image length (0 = default)");
  census->add_option("--pairs", o.pairs, "sampled pairs when not exhaustive");
  census->add_option("--budget", o.budget, "oracle budget per probe");

  auto* deck = app.add_subcommand("deck", "write the vertex-deleted deck");
  deck->add_option("--in", o.in, "edge-list file ('-' = stdin)");
  deck->add_option("--budget", o.budget, "canonicalization budget");

  auto* recon = app.add_subcommand("recon", "reconstruct a graph from a deck");
  recon->add_option("--deck", o.deck_dir, "directory of card_*.txt files")
      ->required();
  recon->add_option("--budget", o.budget, "oracle budget");

  auto* prob = app.add_subcommand("prob", "multinomial mode checks");
  prob->require_subcommand(1);
  auto* prob_verify = prob->add_subcommand(
      "verify-floors", "check that every pmf maximizer dominates the floors");
  auto* pv_m = prob_verify->add_option("--m", o.m, "number of draws");
  auto* pv_p =
      prob_verify
          ->add_option("--p", o.probs, "probability vector, comma separated")
          ->delimiter(',')
          ->needs(pv_m);
  pv_m->needs(pv_p);
  auto* pv_grid = prob_verify->add_option(
      "--grid", o.grid, "grid step as a decimal, e.g. 0.05; sweeps all "
                        "vectors with entries on the grid");
  auto* pv_mm =
      prob_verify
          ->add_option("--max-m", o.max_m, "largest draw count in the sweep")
          ->needs(pv_grid);
  auto* pv_mk =
      prob_verify
          ->add_option("--max-k", o.max_k, "largest vector length in the sweep")
          ->needs(pv_grid);
  pv_grid->needs(pv_mm)->needs(pv_mk)->excludes(pv_m);
  auto* prob_mode = prob->add_subcommand("mode", "multinomial pmf maximizer");
  prob_mode->add_option("--m", o.m, "number of draws")->required();
  prob_mode->add_option("--p", o.probs, "probability vector, comma separated")
      ->required()
      ->delimiter(',');
  prob_mode->add_option("--budget", o.budget, "candidate budget");
  auto* prob_profile =
      prob->add_subcommand("pi-profile", "mode probability decay profile");
  prob_profile->add_option("--k", o.k, "binomial trial count")->required();
  prob_profile->add_option("--p", o.rate, "binomial rate, in (0, 1/2]")
      ->required();
  prob_profile
      ->add_option("--m,--m-list", o.m_values, "draw counts, comma separated")
      ->required()
      ->delimiter(',');
  prob_profile->add_option("--max-categories", o.max_categories,
                           "category window width");
  prob_profile->add_option("--budget", o.budget, "candidate budget");

  auto* experiment =
      app.add_subcommand("experiment", "Monte Carlo harnesses");
  experiment
      ->add_option("name", o.experiment_name,
                   "rigidity | canon | core-size | recon | census")
      ->required()
      ->check(CLI::IsMember({"rigidity", "canon", "core-size", "recon",
                             "census"}));
  experiment->add_option("--n", o.n, "vertex count")->required();
  experiment->add_option("--p", o.p, "edge probability spec")->required();
  experiment->add_option("--trials", o.trials, "trial count")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--budget", o.budget, "oracle budget per call");
  experiment->add_option("--pairs", o.pairs, "census: sampled pairs per trial");
  experiment->add_option("--max-k", o.max_k,
                         "census: largest image length (0 = default)");
  experiment->add_flag("--timings", o.timings,
                       "include per-trial wall times in the report");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  prob_verify->fallthrough();
  prob_mode->fallthrough();
  prob_profile->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (core->parsed()) return cmd_core(o);
    if (canon->parsed()) return cmd_canon(o);
    if (iso->parsed()) return cmd_iso(o);
    if (aut->parsed()) return cmd_aut(o);
    if (census->parsed()) return cmd_census(o);
    if (deck->parsed()) return cmd_deck(o);
    if (recon->parsed()) return cmd_recon(o);
    if (prob->parsed()) {
      if (prob_verify->parsed()) return cmd_prob_verify(o);
      if (prob_mode->parsed()) return cmd_prob_mode(o);
      return cmd_prob_profile(o);
    }
    if (experiment->parsed()) return cmd_experiment(o);
  } catch (const rigid::UndecidedError& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return 2;
  } catch (const rigid::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 3;
}
