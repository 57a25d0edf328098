#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "old/errors.hpp"
#include "old/walks.hpp"

using namespace old;

namespace {

// square 0-1-2-3 plus diagonal 0-2, symmetric directed edges
DirectedGraph toy_biased_graph() {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (auto [a, b] : std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}) {
    pairs.emplace_back(a, b);
    pairs.emplace_back(b, a);
  }
  return testutil::graph_from_pairs(4, pairs);
}

}  // namespace

TEST_CASE("a start node without out-neighbors yields a length-1 walk") {
  DirectedGraph g = testutil::graph_from_pairs(2, {{1, 0}});  // node 0 is a sink
  WalkConfig cfg;
  cfg.walk_length = 10;
  cfg.num_walks = 3;
  WalkCorpus corpus = generate_walks(g, cfg);
  REQUIRE(corpus.walks.size() == 6);
  for (int w = 0; w < 3; ++w) {
    const auto& walk = corpus.walks[w * 2 + 0];  // started at node 0
    REQUIRE(walk.size() == 1);
    CHECK(walk[0] == 0);
    // walks started at node 1 reach the sink after one hop
    CHECK(corpus.walks[w * 2 + 1] == std::vector<NodeId>{1, 0});
  }
  CHECK(corpus.truncated == 6);  // every walk in this graph hits the sink
}

TEST_CASE("a directed 5-cycle is walked in order") {
  DirectedGraph g = testutil::graph_from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  WalkConfig cfg;
  cfg.walk_length = 5;
  cfg.num_walks = 1;
  WalkCorpus corpus = generate_walks(g, cfg);
  REQUIRE(corpus.walks.size() == 5);
  const auto& from0 = corpus.walks[0];
  CHECK(from0 == std::vector<NodeId>{0, 1, 2, 3, 4});
  CHECK(corpus.truncated == 0);
}

TEST_CASE("every consecutive walk pair is an edge in the traversal direction") {
  DirectedGraph g = testutil::random_graph(42, 50, 0.08);
  for (auto direction : {WalkDirection::OutEdges, WalkDirection::Undirected}) {
    WalkConfig cfg;
    cfg.walk_length = 20;
    cfg.num_walks = 4;
    cfg.direction = direction;
    cfg.rng_seed = 7;
    WalkCorpus corpus = generate_walks(g, cfg);
    CHECK(corpus.walks.size() == 4 * g.node_count());
    for (const auto& walk : corpus.walks) {
      REQUIRE(!walk.empty());
      for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
        bool ok = direction == WalkDirection::OutEdges
                      ? g.has_edge(walk[t], walk[t + 1])
                      : g.has_undirected_edge(walk[t], walk[t + 1]);
        REQUIRE(ok);
      }
    }
  }
}

TEST_CASE("biased walk validity and parameter checks") {
  DirectedGraph g = toy_biased_graph();
  WalkConfig cfg;
  cfg.biased = true;
  cfg.p = 0.25;
  cfg.q = 4.0;
  cfg.walk_length = 30;
  cfg.num_walks = 5;
  WalkCorpus corpus = generate_walks(g, cfg);
  for (const auto& walk : corpus.walks) {
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) REQUIRE(g.has_edge(walk[t], walk[t + 1]));
  }

  cfg.p = 0.0;
  CHECK_THROWS_AS(generate_walks(g, cfg), ValidationError);
  CHECK_THROWS_AS(generate_walks(DirectedGraph(), WalkConfig{}), ValidationError);
}

TEST_CASE("identical seeds give bit-identical corpora; different seeds differ") {
  DirectedGraph g = testutil::random_graph(5, 40, 0.1);
  WalkConfig cfg;
  cfg.walk_length = 15;
  cfg.num_walks = 3;
  cfg.rng_seed = 99;
  WalkCorpus a = generate_walks(g, cfg, 1);
  WalkCorpus b = generate_walks(g, cfg, 2);  // thread count must not matter
  CHECK(a.walks == b.walks);

  cfg.rng_seed = 100;
  WalkCorpus c = generate_walks(g, cfg);
  CHECK(a.walks != c.walks);
}

TEST_CASE("uniform next hops pass a chi-squared uniformity check") {
  // star: center 0, five leaves, symmetric edges; walks bounce
  // leaf -> center -> leaf, so odd positions sample the center's next hop
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId leaf = 1; leaf <= 5; ++leaf) {
    pairs.emplace_back(0, leaf);
    pairs.emplace_back(leaf, 0);
  }
  DirectedGraph g = testutil::graph_from_pairs(6, pairs);
  WalkConfig cfg;
  cfg.walk_length = 41;
  cfg.num_walks = 900;
  cfg.rng_seed = 2024;
  WalkCorpus corpus = generate_walks(g, cfg);

  std::map<NodeId, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& walk : corpus.walks) {
    for (std::size_t t = 0; t + 1 < walk.size(); ++t) {
      if (walk[t] == 0) {
        ++counts[walk[t + 1]];
        ++total;
      }
    }
  }
  REQUIRE(total > 100000);
  double expected = static_cast<double>(total) / 5.0;
  double chi2 = 0.0;
  for (NodeId leaf = 1; leaf <= 5; ++leaf) {
    double diff = static_cast<double>(counts[leaf]) - expected;
    chi2 += diff * diff / expected;
  }
  CHECK(chi2 < 13.2767);  // df=4 critical value at 1% significance
}

TEST_CASE("biased transition frequencies match the normalized 1/p:1:1/q weights") {
  DirectedGraph g = toy_biased_graph();
  const double p = 0.25, q = 4.0;

  // analytic second-order table computed from scratch with adjacency sets
  std::vector<std::set<NodeId>> adj(4);
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v : g.out_neighbors(u)) adj[u].insert(v);
  }
  std::map<std::pair<NodeId, NodeId>, std::map<NodeId, double>> analytic;
  for (NodeId prev = 0; prev < 4; ++prev) {
    for (NodeId cur : adj[prev]) {
      double total = 0.0;
      std::map<NodeId, double> weights;
      for (NodeId next : adj[cur]) {
        double w = next == prev ? 1.0 / p : (adj[prev].count(next) ? 1.0 : 1.0 / q);
        weights[next] = w;
        total += w;
      }
      for (auto& [next, w] : weights) w /= total;
      analytic[{prev, cur}] = weights;
    }
  }

  WalkConfig cfg;
  cfg.biased = true;
  cfg.p = p;
  cfg.q = q;
  cfg.walk_length = 100;
  cfg.num_walks = 250;  // 4 nodes x 250 walks x 100 steps = 1e5 steps
  cfg.rng_seed = 77;
  WalkCorpus corpus = generate_walks(g, cfg);

  std::map<std::pair<NodeId, NodeId>, std::map<NodeId, std::size_t>> counts;
  std::map<std::pair<NodeId, NodeId>, std::size_t> totals;
  for (const auto& walk : corpus.walks) {
    for (std::size_t t = 2; t < walk.size(); ++t) {
      auto key = std::make_pair(walk[t - 2], walk[t - 1]);
      ++counts[key][walk[t]];
      ++totals[key];
    }
  }

  for (const auto& [key, expected_dist] : analytic) {
    REQUIRE(totals[key] > 1000);
    for (const auto& [next, prob] : expected_dist) {
      double freq = static_cast<double>(counts[key][next]) / static_cast<double>(totals[key]);
      CHECK(std::abs(freq - prob) < 0.02);
    }
  }
}
