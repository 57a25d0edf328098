// Acceptance suite: one pass/fail line per criterion. Returns the number of
// failed criteria. Criterion 7 needs the public Twitch-FR edge list on disk;
// see resolve_twitch_edges() for the search order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "old/analysis.hpp"
#include "old/asne.hpp"
#include "old/attributes.hpp"
#include "old/embedding.hpp"
#include "old/errors.hpp"
#include "old/graph.hpp"
#include "old/kshell.hpp"
#include "old/pipeline.hpp"
#include "old/ranking.hpp"
#include "old/rng.hpp"
#include "old/sgns.hpp"
#include "old/sha256.hpp"
#include "old/sir.hpp"
#include "old/walks.hpp"

namespace fs = std::filesystem;
using namespace old;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      detail << "    FAILED: " << message << "\n";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --------------------------------------------------------------- criterion 1

void criterion_kshell(Check& c) {
  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < 50; ++i) {
    std::size_t n = 20 + (i * 37) % 181;  // up to 200
    double p = (i % 4 == 0) ? 0.015 : (i % 4 == 1 ? 0.05 : (i % 4 == 2 ? 0.12 : 0.3));
    auto pairs = testutil::random_edge_pairs(1000 + i, n, p);
    DirectedGraph g = testutil::graph_from_pairs(n, pairs);
    NodeMetrics m = k_shell(g);

    // standalone peeling oracle
    std::vector<std::set<NodeId>> adj(n);
    for (auto [u, v] : pairs) {
      if (u != v) {
        adj[u].insert(v);
        adj[v].insert(u);
      }
    }
    std::vector<std::uint32_t> expected(n, 0);
    std::vector<bool> alive(n, true);
    std::size_t remaining = n;
    std::uint32_t k = 0;
    while (remaining > 0) {
      bool removed = true;
      while (removed) {
        removed = false;
        for (NodeId v = 0; v < n; ++v) {
          if (alive[v] && adj[v].size() <= k) {
            expected[v] = k;
            alive[v] = false;
            --remaining;
            for (NodeId w : adj[v]) adj[w].erase(v);
            adj[v].clear();
            removed = true;
          }
        }
      }
      ++k;
    }
    c.expect(m.core == expected, "core mismatch on graph " + std::to_string(i));
    if (!c.ok) return;
  }
  double elapsed = seconds_since(start);
  c.expect(elapsed < 10.0, "runtime " + std::to_string(elapsed) + "s exceeds 10s");
  c.detail << "    50 graphs matched the peeling oracle in " << elapsed << "s\n";
}

// --------------------------------------------------------------- criterion 2

void criterion_ranking_oracles(Check& c) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    DirectedGraph g = testutil::random_graph(seed * 313, 20, 0.15);
    EmbeddingMatrix emb(20, 5);
    Rng rng(seed);
    for (double& v : emb.data()) v = (rng.next_double() - 0.5) * 2.0;

    RankingResult ar = asne_rank(g, emb);
    auto p = oracle::dense_transition(g, emb);
    auto expected = oracle::pagerank_dense_solve(p, 0.85);
    double max_err = 0.0;
    std::vector<double> scores(20);
    for (const auto& e : ar.entries) scores[e.node] = e.score;
    for (NodeId i = 0; i < 20; ++i) max_err = std::max(max_err, std::abs(scores[i] - expected[i]));
    c.expect(max_err < 1e-8, "asne_rank L-inf " + std::to_string(max_err) + " on seed " +
                                 std::to_string(seed));

    RankingResult lr = leader_rank(g);
    auto lr_expected = oracle::leaderrank_dense_solve(g);
    std::vector<double> lr_scores(20);
    for (const auto& e : lr.entries) lr_scores[e.node] = e.score;
    double lr_err = 0.0;
    for (NodeId i = 0; i < 20; ++i) lr_err = std::max(lr_err, std::abs(lr_scores[i] - lr_expected[i]));
    c.expect(lr_err < 1e-8, "leader_rank L-inf " + std::to_string(lr_err) + " on seed " +
                                std::to_string(seed));
  }

  // identical embeddings reproduce the unweighted-PageRank ordering exactly
  DirectedGraph g = testutil::random_graph(999, 30, 0.12);
  EmbeddingMatrix flat(30, 4);
  for (double& v : flat.data()) v = 0.6;
  RankingResult r = asne_rank(g, flat);
  auto reference = oracle::uniform_pagerank_reference(g, 0.85, 300);
  std::vector<NodeId> ref_order(30);
  for (NodeId i = 0; i < 30; ++i) ref_order[i] = i;
  std::sort(ref_order.begin(), ref_order.end(), [&](NodeId a, NodeId b) {
    if (reference[a] != reference[b]) return reference[a] > reference[b];
    return a < b;
  });
  for (std::size_t i = 0; i < 30; ++i) {
    c.expect(r.entries[i].node == ref_order[i], "uniform ordering differs at position " +
                                                    std::to_string(i));
  }
}

// --------------------------------------------------------------- criterion 3

void criterion_nlc_exactness(Check& c) {
  // crafted graphs: path, star with a tail, random sparse
  std::vector<DirectedGraph> graphs;
  graphs.push_back(testutil::graph_from_pairs(4, {{0, 1}, {1, 2}, {2, 3}}));
  {
    std::vector<std::pair<NodeId, NodeId>> star;
    for (NodeId leaf = 1; leaf <= 6; ++leaf) star.emplace_back(leaf, 0);
    star.emplace_back(0, 7);
    graphs.push_back(testutil::graph_from_pairs(8, star));
  }
  graphs.push_back(testutil::random_graph(47, 50, 0.06));

  std::uint64_t seed = 5;
  for (const auto& g : graphs) {
    NodeMetrics metrics = k_shell(g);
    EmbeddingMatrix emb(g.node_count(), 3);
    Rng rng(seed++);
    for (double& v : emb.data()) v = (rng.next_double() - 0.5) * 3.0;
    RankingResult r = nlc_rank(g, emb, metrics);
    std::vector<double> scores(g.node_count());
    for (const auto& e : r.entries) scores[e.node] = e.score;
    for (NodeId i = 0; i < g.node_count(); ++i) {
      double direct = oracle::nlc_direct(g, emb, metrics.core[i], i);
      c.expect(std::abs(scores[i] - direct) < 1e-12,
               "direct evaluation differs at node " + std::to_string(i));
    }
  }

  // identical embeddings: NLC(i) = Ks_i * |Gamma(i)| exactly
  DirectedGraph g = testutil::random_graph(53, 40, 0.08);
  NodeMetrics metrics = k_shell(g);
  EmbeddingMatrix flat(40, 6);
  for (double& v : flat.data()) v = -1.25;
  RankingResult r = nlc_rank(g, flat, metrics);
  std::vector<double> scores(40);
  for (const auto& e : r.entries) scores[e.node] = e.score;
  for (NodeId i = 0; i < 40; ++i) {
    double expected = static_cast<double>(metrics.core[i]) *
                      static_cast<double>(k_hop_neighborhood(g, i, 3).size());
    c.expect(scores[i] == expected, "Ks*|Gamma| mismatch at node " + std::to_string(i));
  }
}

// --------------------------------------------------------------- criterion 4

void criterion_node2vec_bias(Check& c) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (auto [a, b] :
       std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}) {
    pairs.emplace_back(a, b);
    pairs.emplace_back(b, a);
  }
  DirectedGraph g = testutil::graph_from_pairs(4, pairs);
  const double p = 0.25, q = 4.0;

  std::vector<std::set<NodeId>> adj(4);
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v : g.out_neighbors(u)) adj[u].insert(v);
  }
  std::map<std::pair<NodeId, NodeId>, std::map<NodeId, double>> analytic;
  for (NodeId prev = 0; prev < 4; ++prev) {
    for (NodeId cur : adj[prev]) {
      std::map<NodeId, double> w;
      double total = 0.0;
      for (NodeId next : adj[cur]) {
        double x = next == prev ? 1.0 / p : (adj[prev].count(next) ? 1.0 : 1.0 / q);
        w[next] = x;
        total += x;
      }
      for (auto& [_, x] : w) x /= total;
      analytic[{prev, cur}] = w;
    }
  }

  WalkConfig cfg;
  cfg.biased = true;
  cfg.p = p;
  cfg.q = q;
  cfg.walk_length = 100;
  cfg.num_walks = 250;  // 1e5 steps over 4 start nodes
  cfg.rng_seed = 31337;
  WalkCorpus corpus = generate_walks(g, cfg, 2);

  std::map<std::pair<NodeId, NodeId>, std::map<NodeId, std::size_t>> counts;
  std::map<std::pair<NodeId, NodeId>, std::size_t> totals;
  std::size_t steps = 0;
  for (const auto& walk : corpus.walks) {
    steps += walk.size();
    for (std::size_t t = 2; t < walk.size(); ++t) {
      ++counts[{walk[t - 2], walk[t - 1]}][walk[t]];
      ++totals[{walk[t - 2], walk[t - 1]}];
    }
  }
  c.expect(steps >= 100000, "fewer than 1e5 steps generated");

  double worst = 0.0;
  for (const auto& [key, dist] : analytic) {
    c.expect(totals[key] > 500, "state visited too rarely");
    for (const auto& [next, prob] : dist) {
      double freq = static_cast<double>(counts[key][next]) / static_cast<double>(totals[key]);
      worst = std::max(worst, std::abs(freq - prob));
    }
  }
  c.expect(worst < 0.02, "worst absolute deviation " + std::to_string(worst));
  c.detail << "    worst |empirical - analytic| = " << worst << "\n";
}

// --------------------------------------------------------------- criterion 5

void criterion_sgns(Check& c) {
  auto start = std::chrono::steady_clock::now();

  // 5a: strictly decreasing loss on the repeated-pair corpus
  WalkCorpus corpus;
  corpus.node_count = 2;
  corpus.walks.assign(500, {0u, 1u});
  SgnsConfig sc;
  sc.dim = 8;
  sc.window = 1;
  sc.epochs = 5;
  sc.lr = 0.025;
  sc.rng_seed = 12;
  SgnsStats stats;
  train_sgns(corpus, sc, &stats);
  for (std::size_t e = 1; e < stats.epoch_loss.size(); ++e) {
    c.expect(stats.epoch_loss[e] < stats.epoch_loss[e - 1],
             "loss rose between epochs " + std::to_string(e - 1) + " and " + std::to_string(e));
  }

  // 5b: analytic vs central finite-difference gradients at 10 random points
  Rng rng(777);
  const int dim = 7, n_neg = 3;
  const double h = 1e-6;
  double worst_rel = 0.0;
  for (int point = 0; point < 10; ++point) {
    std::vector<double> center(dim), positive(dim);
    std::vector<std::vector<double>> negs(n_neg, std::vector<double>(dim));
    for (auto& v : center) v = rng.next_double() * 2 - 1;
    for (auto& v : positive) v = rng.next_double() * 2 - 1;
    for (auto& neg : negs) {
      for (auto& v : neg) v = rng.next_double() * 2 - 1;
    }
    std::vector<const double*> neg_ptrs{negs[0].data(), negs[1].data(), negs[2].data()};
    std::vector<double> g_center(dim), g_positive(dim);
    std::vector<std::vector<double>> g_negs(n_neg, std::vector<double>(dim));
    std::vector<double*> g_neg_ptrs{g_negs[0].data(), g_negs[1].data(), g_negs[2].data()};
    detail::sgns_sample_grads(center.data(), positive.data(), neg_ptrs.data(), n_neg, dim,
                              g_center.data(), g_positive.data(), g_neg_ptrs.data());
    auto loss_at = [&] {
      return detail::sgns_sample_loss(center.data(), positive.data(), neg_ptrs.data(), n_neg, dim);
    };
    auto probe = [&](std::vector<double>& vec, const std::vector<double>& grad) {
      for (int d = 0; d < dim; ++d) {
        double keep = vec[d];
        vec[d] = keep + h;
        double up = loss_at();
        vec[d] = keep - h;
        double down = loss_at();
        vec[d] = keep;
        double numeric = (up - down) / (2 * h);
        double denom = std::max({std::abs(numeric), std::abs(grad[d]), 1e-8});
        worst_rel = std::max(worst_rel, std::abs(numeric - grad[d]) / denom);
      }
    };
    probe(center, g_center);
    probe(positive, g_positive);
    for (int k = 0; k < n_neg; ++k) probe(negs[k], g_negs[k]);
  }
  c.expect(worst_rel < 1e-4, "gradient relative error " + std::to_string(worst_rel));
  c.detail << "    worst gradient relative error = " << worst_rel << "\n";

  // 5c: planted-partition cosine separation in at least 19 of 20 seeds
  int separated = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng gen(7000 + seed);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId u = 0; u < 100; ++u) {
      for (NodeId v = u + 1; v < 100; ++v) {
        bool same = (u < 50) == (v < 50);
        if (gen.next_double() < (same ? 0.3 : 0.02)) {
          pairs.emplace_back(u, v);
          pairs.emplace_back(v, u);
        }
      }
    }
    DirectedGraph g = testutil::graph_from_pairs(100, pairs);
    WalkConfig wc;
    wc.walk_length = 40;
    wc.num_walks = 10;
    wc.window = 5;
    wc.rng_seed = seed;
    WalkCorpus walks = generate_walks(g, wc, 2);
    SgnsConfig cfg;
    cfg.dim = 32;
    cfg.window = 5;
    cfg.epochs = 3;
    cfg.lr = 0.05;
    cfg.rng_seed = seed;
    EmbeddingMatrix emb = train_sgns(walks, cfg);

    double intra = 0, inter = 0;
    std::size_t n_intra = 0, n_inter = 0;
    for (NodeId u = 0; u < 100; ++u) {
      for (NodeId v = u + 1; v < 100; ++v) {
        double dot = 0, nu = 0, nv = 0;
        for (int d = 0; d < 32; ++d) {
          dot += emb.row(u)[d] * emb.row(v)[d];
          nu += emb.row(u)[d] * emb.row(u)[d];
          nv += emb.row(v)[d] * emb.row(v)[d];
        }
        double cos = dot / (std::sqrt(nu) * std::sqrt(nv));
        if ((u < 50) == (v < 50)) {
          intra += cos;
          ++n_intra;
        } else {
          inter += cos;
          ++n_inter;
        }
      }
    }
    if (intra / n_intra > inter / n_inter) ++separated;
  }
  c.expect(separated >= 19, "separation in only " + std::to_string(separated) + "/20 seeds");
  c.detail << "    planted partition separated in " << separated << "/20 seeds\n";

  double elapsed = seconds_since(start);
  c.expect(elapsed < 120.0, "runtime " + std::to_string(elapsed) + "s exceeds 2 minutes");
  c.detail << "    runtime " << elapsed << "s\n";
}

// --------------------------------------------------------------- criterion 6

void criterion_sir(Check& c) {
  // tau=0: seeds only
  DirectedGraph g0 = testutil::random_graph(3, 30, 0.1);
  SIRConfig zero;
  zero.tau = 0.0;
  zero.gamma = 1.0;
  zero.seeds = {0, 5, 9};
  SIRTrace t0 = run_sir(g0, zero);
  c.expect(t0.final_infected_ever == 3, "tau=0 spread beyond the seeds");
  c.expect(t0.infected_ever == std::vector<NodeId>{0, 5, 9}, "tau=0 infected set differs");

  // tau=1, gamma=1 wave along an influence chain
  std::vector<std::pair<NodeId, NodeId>> chain;
  for (NodeId k = 0; k + 1 < 10; ++k) chain.emplace_back(k + 1, k);
  DirectedGraph gc = testutil::graph_from_pairs(10, chain);
  SIRConfig one;
  one.tau = 1.0;
  one.gamma = 1.0;
  one.seeds = {0};
  SIRTrace t1 = run_sir(gc, one);
  c.expect(t1.final_infected_ever == 10, "deterministic wave did not fill the chain");
  c.expect(t1.steps() == 11, "wave step count wrong");
  for (std::size_t step = 0; step + 1 < t1.steps(); ++step) {
    c.expect(t1.infected[step] == 1, "wave width differs from 1");
  }

  // single-edge infection frequency within 3 sigma at 1e4 runs
  DirectedGraph ge = testutil::graph_from_pairs(2, {{1, 0}});
  SIRConfig half;
  half.tau = 0.5;
  half.gamma = 1.0;
  half.seeds = {0};
  half.rng_seed = 991;
  int hits = 0;
  for (int r = 0; r < 10000; ++r) {
    if (detail::run_sir_rep(ge, half, r).final_infected_ever == 2) ++hits;
  }
  double freq = hits / 10000.0;
  c.expect(std::abs(freq - 0.5) < 0.015,
           "single-edge frequency " + std::to_string(freq) + " outside 0.5 +/- 0.015");
  c.detail << "    single-edge infection frequency = " << freq << "\n";

  // coupling monotonicity on every one of 100 coupled runs
  DirectedGraph gm = testutil::random_graph(29, 80, 0.05);
  int monotone = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    SIRConfig cfg;
    cfg.gamma = 1.0;
    cfg.seeds = {0, 7, 13};
    cfg.rng_seed = 1234;
    cfg.tau = 0.04;
    SIRTrace lo = detail::run_sir_rep(gm, cfg, rep);
    cfg.tau = 0.15;
    SIRTrace mid = detail::run_sir_rep(gm, cfg, rep);
    cfg.tau = 0.5;
    SIRTrace hi = detail::run_sir_rep(gm, cfg, rep);
    bool nested = std::includes(mid.infected_ever.begin(), mid.infected_ever.end(),
                                lo.infected_ever.begin(), lo.infected_ever.end()) &&
                  std::includes(hi.infected_ever.begin(), hi.infected_ever.end(),
                                mid.infected_ever.begin(), mid.infected_ever.end());
    if (nested) ++monotone;

    // conservation at every step of every run
    for (const SIRTrace* t : {&lo, &mid, &hi}) {
      for (std::size_t step = 0; step < t->steps(); ++step) {
        c.expect(t->susceptible[step] + t->infected[step] + t->recovered[step] == 80,
                 "S+I+R conservation violated");
      }
      c.expect(t->infected.back() == 0, "run ended while infectious");
    }
  }
  c.expect(monotone == 100, "coupling monotonicity held in only " + std::to_string(monotone) +
                                "/100 runs");
  c.detail << "    coupling monotonicity held in " << monotone << "/100 runs\n";
}

// --------------------------------------------------------------- criterion 7

std::string resolve_twitch_edges() {
  std::vector<std::string> candidates;
  if (const char* p = std::getenv("OLD_TWITCH_FR_EDGES")) candidates.push_back(p);
  if (const char* base = std::getenv("OLD_DATA_DIR")) {
    candidates.push_back(std::string(base) + "/twitch_fr/musae_FR_edges.csv");
    candidates.push_back(std::string(base) + "/musae_FR_edges.csv");
  }
  candidates.push_back("data/twitch_fr/musae_FR_edges.csv");
  candidates.push_back("data/musae_FR_edges.csv");
  for (const auto& path : candidates) {
    if (fs::exists(path)) return path;
  }
  return "";
}

void criterion_twitch(Check& c) {
  auto start = std::chrono::steady_clock::now();
  std::string path = resolve_twitch_edges();
  if (path.empty()) {
    c.expect(false,
             "Twitch-FR dataset not found; set OLD_TWITCH_FR_EDGES or place "
             "musae_FR_edges.csv under $OLD_DATA_DIR/twitch_fr/ or data/twitch_fr/");
    return;
  }

  // the public file carries a "from,to" header the edge-list format lacks
  std::ifstream raw(path);
  std::stringstream cleaned;
  std::string line;
  bool first = true;
  while (std::getline(raw, line)) {
    if (first && line.find_first_not_of("0123456789, \t\r") != std::string::npos) {
      first = false;
      continue;
    }
    first = false;
    cleaned << line << '\n';
  }
  IngestReport report;
  DirectedGraph g = load_edge_list(cleaned, &report, path);
  c.expect(g.node_count() == 6549, "node count " + std::to_string(g.node_count()) + " != 6549");
  c.expect(g.edge_count() == 112666,
           "edge count " + std::to_string(g.edge_count()) + " != 112666");
  if (!c.ok) return;

  const int threads = 2;
  // twitch-style embedding regime: walk length 40, 80 walks/node, window 10,
  // dim 64; one training epoch keeps the full run inside the budget
  WalkConfig wc;
  wc.walk_length = 40;
  wc.num_walks = 80;
  wc.window = 10;
  wc.rng_seed = 42;
  WalkCorpus corpus = generate_walks(g, wc, threads);
  SgnsConfig sc;
  sc.dim = 64;
  sc.window = 10;
  sc.negatives = 5;
  sc.epochs = 1;
  sc.lr = 0.025;
  sc.rng_seed = 42;
  sc.threads = threads;
  EmbeddingMatrix emb = train_sgns(corpus, sc);
  c.detail << "    deepwalk trained in " << seconds_since(start) << "s\n";

  NodeMetrics metrics = k_shell(g);
  RankingResult nlc = nlc_rank(g, emb, metrics, threads);
  RankingResult lr = leader_rank(g);

  SIRConfig sir;
  sir.tau = 0.015;
  sir.gamma = 1.0;
  sir.repetitions = 50;
  sir.rng_seed = 42;
  sir.seeds = top_n(nlc, 100);
  double nlc_mean = evaluate_seeds(g, sir, threads).mean_final;
  sir.seeds = top_n(lr, 100);
  double lr_mean = evaluate_seeds(g, sir, threads).mean_final;

  c.detail << "    mean final infected-ever: NLCRank(DeepWalk) = " << nlc_mean
           << ", LeaderRank = " << lr_mean << "\n";
  c.expect(nlc_mean >= 0.9 * lr_mean, "NLCRank mean " + std::to_string(nlc_mean) +
                                          " below 0.9 x LeaderRank mean " +
                                          std::to_string(lr_mean));
  double elapsed = seconds_since(start);
  c.expect(elapsed < 900.0, "runtime " + std::to_string(elapsed) + "s exceeds 15 minutes");
  c.detail << "    total runtime " << elapsed << "s\n";
}

// --------------------------------------------------------------- criterion 8

void criterion_combination(Check& c) {
  // structural check on real rankings over a synthetic graph
  DirectedGraph g = testutil::random_graph(2024, 60, 0.08);
  NodeMetrics metrics = k_shell(g);
  std::vector<RankingResult> asne_lists, nlc_lists;
  for (std::uint64_t m = 0; m < 3; ++m) {
    EmbeddingMatrix emb(60, 6);
    Rng rng(m + 1);
    for (double& v : emb.data()) v = (rng.next_double() - 0.5) * 2;
    RankingResult a = asne_rank(g, emb);
    a.method = "m" + std::to_string(m);
    asne_lists.push_back(std::move(a));
    RankingResult nl = nlc_rank(g, emb, metrics);
    nl.method = "m" + std::to_string(m);
    nlc_lists.push_back(std::move(nl));
  }
  auto keep = outlier_keep_predicate(g, 10.0);
  auto merged_a = merge_same_ranker(asne_lists, keep);
  auto merged_n = merge_same_ranker(nlc_lists, keep);
  CombineConfig cc;  // n = 15, ratio 1:2
  CombinedLeaders leaders = combine_leaders(merged_a, merged_n, cc);
  c.expect(leaders.asnerank_part.size() == 5, "ASNERank part size != 5");
  c.expect(leaders.nlcrank_part.size() == 10, "NLCRank part size != 10");
  std::set<NodeId> all;
  for (const auto& cand : leaders.asnerank_part) all.insert(cand.node);
  for (const auto& cand : leaders.nlcrank_part) all.insert(cand.node);
  c.expect(all.size() == 15, "parts are not disjoint");

  // Borda hand example: lists (a,b,c), (b,a,c), (b,c,a) -> head b
  auto mk = [](const std::string& tag, std::vector<NodeId> order) {
    RankingResult r;
    r.method = tag;
    double s = 3;
    for (NodeId v : order) r.entries.push_back({v, s--});
    return r;
  };
  auto merged = merge_same_ranker({mk("x", {0, 1, 2}), mk("y", {1, 0, 2}), mk("z", {1, 2, 0})});
  c.expect(merged.size() == 3, "hand merge size");
  c.expect(merged[0].node == 1 && merged[0].borda == 8.0, "hand merge head is not b@8");
  c.expect(merged[1].node == 0 && merged[1].borda == 6.0, "hand merge second is not a@6");
  c.expect(merged[2].node == 2 && merged[2].borda == 4.0, "hand merge third is not c@4");
}

// --------------------------------------------------------------- criterion 9

void criterion_determinism(Check& c) {
  testutil::TempDir tmp("determinism");

  // synthetic dataset with attitudes
  std::ostringstream edges;
  auto pairs = testutil::random_edge_pairs(5150, 50, 0.08);
  for (auto [u, v] : pairs) edges << 'n' << u << " n" << v << '\n';
  testutil::write_file(tmp.file("edges.txt"), edges.str());
  std::ostringstream attrs;
  attrs << "id,support,reject,irrelevant,x\n";
  Rng rng(63);
  for (int i = 0; i < 50; ++i) {
    double a = rng.next_double(), b = rng.next_double() * (1.0 - a);
    attrs << 'n' << i << ',' << a << ',' << b << ',' << (1.0 - a - b) << ',' << rng.next_double()
          << '\n';
  }
  testutil::write_file(tmp.file("attrs.csv"), attrs.str());
  testutil::write_file(tmp.file("cfg.ini"),
                       "[data]\nedges = " + tmp.file("edges.txt") +
                           "\nattributes = " + tmp.file("attrs.csv") +
                           "\n[embedding]\nmethods = deepwalk,node2vec,asne-lite\n"
                           "dim = 8\nwalk_length = 8\nnum_walks = 2\nwindow = 3\nepochs = 1\n"
                           "negatives = 3\nasne_d_struct = 4\nasne_d_attr = 4\nasne_epochs = 2\n"
                           "asne_batch = 16\n"
                           "[ranking]\nmethods = nlcrank,asnerank,leaderrank\ntop_n = 15\n"
                           "[sir]\ntau = 0.1\ngamma = 1\nrepetitions = 5\nseeds = 10\n"
                           "[combine]\nn = 15\nratio = 1:2\noutlier_percentile = 10\n"
                           "[run]\nseed = 42\n");

  auto run_pipeline = [&](const std::string& out) {
    CliOverrides ov;
    ov.out_dir = tmp.file(out);
    ov.threads = 1;
    PipelineConfig cfg = load_pipeline_config(tmp.file("cfg.ini"), ov);
    stage_ingest(cfg);
    stage_embed(cfg);
    stage_rank(cfg);
    stage_sir(cfg);
    stage_combine(cfg);
    stage_report(cfg);
  };
  run_pipeline("run_a");
  run_pipeline("run_b");

  // digest comparison over the artifact tree; manifest.json carries
  // wall-clock timings and is the one file excluded
  auto digest_tree = [](const std::string& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      std::string rel = fs::relative(entry.path(), dir).string();
      if (rel == "manifest.json") continue;
      out[rel] = Sha256::of_file(entry.path().string());
    }
    return out;
  };
  auto a = digest_tree(tmp.file("run_a"));
  auto b = digest_tree(tmp.file("run_b"));
  c.expect(!a.empty(), "no artifacts produced");
  c.expect(a.size() == b.size(), "artifact inventories differ in size");
  for (const auto& [rel, digest] : a) {
    auto it = b.find(rel);
    if (it == b.end()) {
      c.expect(false, "artifact missing in second run: " + rel);
    } else {
      c.expect(it->second == digest, "digest differs: " + rel);
    }
  }
  c.detail << "    " << a.size() << " artifacts byte-identical across runs\n";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "k-shell oracle parity (50 graphs, <10s)", criterion_kshell},
      {2, "ranking oracle parity (dense solves, uniform-PageRank ordering)",
       criterion_ranking_oracles},
      {3, "NLC formula exactness (1e-12, Ks*|Gamma| identity)", criterion_nlc_exactness},
      {4, "node2vec second-order bias (2% absolute, 1e5 steps)", criterion_node2vec_bias},
      {5, "SGNS sanity (loss decrease, gradient check, planted partition, <2min)",
       criterion_sgns},
      {6, "SIR correctness (deterministic cases, 3-sigma, coupling, conservation)",
       criterion_sir},
      {7, "public-data end-to-end (Twitch-FR, NLCRank vs LeaderRank)", criterion_twitch},
      {8, "combination structure (5+10 disjoint, Borda hand example)", criterion_combination},
      {9, "determinism (byte-identical artifact trees)", criterion_determinism},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << "    EXCEPTION: " << e.what() << "\n";
    }
    std::cout << (check.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
              << criterion.name << "\n";
    std::cout << check.detail.str();
    if (!check.ok) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures;
}
