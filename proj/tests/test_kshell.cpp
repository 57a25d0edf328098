#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "old/errors.hpp"
#include "old/kshell.hpp"

using namespace old;

namespace {

// Independent oracle: literal minimum-degree peeling over adjacency sets,
// no bucket machinery shared with the implementation.
std::vector<std::uint32_t> peel_oracle(std::size_t n,
                                       const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<std::set<NodeId>> adj(n);
  for (auto [u, v] : pairs) {
    if (u == v) continue;
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<std::uint32_t> core(n, 0);
  std::vector<bool> alive(n, true);
  std::size_t remaining = n;
  std::uint32_t k = 0;
  while (remaining > 0) {
    bool removed_any = true;
    while (removed_any) {
      removed_any = false;
      for (NodeId v = 0; v < n; ++v) {
        if (alive[v] && adj[v].size() <= k) {
          core[v] = k;
          alive[v] = false;
          --remaining;
          for (NodeId w : adj[v]) adj[w].erase(v);
          adj[v].clear();
          removed_any = true;
        }
      }
    }
    ++k;
  }
  return core;
}

// Independent oracle: plain queue BFS with an explicit distance array.
std::vector<NodeId> bfs_oracle(const DirectedGraph& g, NodeId start, unsigned max_depth) {
  std::vector<int> dist(g.node_count(), -1);
  dist[start] = 0;
  std::vector<NodeId> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    if (dist[u] == static_cast<int>(max_depth)) continue;
    for (NodeId w : g.undirected_neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<NodeId> result;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v != start && dist[v] > 0) result.push_back(v);
  }
  return result;
}

}  // namespace

TEST_CASE("isolated node has core 0, triangle has core 2") {
  // nodes: triangle 0-1-2 (directed arbitrarily) plus isolated node 3
  DirectedGraph g = testutil::graph_from_pairs(4, {{0, 1}, {1, 2}, {2, 0}});
  NodeMetrics m = k_shell(g);
  CHECK(m.core[0] == 2);
  CHECK(m.core[1] == 2);
  CHECK(m.core[2] == 2);
  CHECK(m.core[3] == 0);
}

TEST_CASE("k-shell matches the peeling oracle on random graphs") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    std::size_t n = 20 + (seed * 13) % 120;
    double p = seed % 3 == 0 ? 0.02 : (seed % 3 == 1 ? 0.08 : 0.2);
    auto pairs = testutil::random_edge_pairs(seed * 977, n, p);
    DirectedGraph g = testutil::graph_from_pairs(n, pairs);
    NodeMetrics m = k_shell(g);
    auto expected = peel_oracle(n, pairs);
    REQUIRE(m.core == expected);
  }
}

TEST_CASE("k-shell is invariant to edge order and node relabeling") {
  auto pairs = testutil::random_edge_pairs(404, 60, 0.1);
  DirectedGraph g = testutil::graph_from_pairs(60, pairs);
  NodeMetrics base = k_shell(g);

  // reversed edge input order
  auto reversed = pairs;
  std::reverse(reversed.begin(), reversed.end());
  NodeMetrics reordered = k_shell(testutil::graph_from_pairs(60, reversed));
  CHECK(reordered.core == base.core);

  // relabeled: node i -> (i + 7) % n
  std::vector<std::pair<NodeId, NodeId>> relabeled;
  for (auto [u, v] : pairs) relabeled.emplace_back((u + 7) % 60, (v + 7) % 60);
  NodeMetrics perm = k_shell(testutil::graph_from_pairs(60, relabeled));
  for (NodeId i = 0; i < 60; ++i) CHECK(perm.core[(i + 7) % 60] == base.core[i]);
}

TEST_CASE("core number never exceeds the undirected degree") {
  DirectedGraph g = testutil::random_graph(321, 100, 0.05);
  NodeMetrics m = k_shell(g);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    CHECK(m.core[i] <= g.undirected_degree(i));
  }
}

TEST_CASE("peeling leaves a subgraph of minimum degree k") {
  DirectedGraph g = testutil::random_graph(555, 80, 0.12);
  NodeMetrics m = k_shell(g);
  std::uint32_t max_core = *std::max_element(m.core.begin(), m.core.end());
  for (std::uint32_t k = 1; k <= max_core; ++k) {
    // nodes with core >= k must have >= k neighbors with core >= k
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (m.core[v] < k) continue;
      std::size_t deg = 0;
      for (NodeId w : g.undirected_neighbors(v)) {
        if (m.core[w] >= k) ++deg;
      }
      CHECK(deg >= k);
    }
  }
}

TEST_CASE("metrics carry in/out degrees") {
  DirectedGraph g = testutil::graph_from_pairs(3, {{0, 1}, {2, 1}, {1, 0}});
  NodeMetrics m = k_shell(g);
  CHECK(m.out_degree[0] == 1);
  CHECK(m.in_degree[1] == 2);
  CHECK(m.out_degree[2] == 1);
  CHECK(m.in_degree[2] == 0);
}

TEST_CASE("k-hop on a path") {
  // path 0-1-2-3-4 (directed edges forward; hops are undirected)
  DirectedGraph g = testutil::graph_from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto hop3 = k_hop_neighborhood(g, 0, 3);
  CHECK(hop3 == std::vector<NodeId>{1, 2, 3});
  auto hop1 = k_hop_neighborhood(g, 2, 1);
  CHECK(hop1 == std::vector<NodeId>{1, 3});
}

TEST_CASE("k-hop from a star center reaches all leaves") {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId leaf = 1; leaf <= 8; ++leaf) pairs.emplace_back(leaf, 0);
  DirectedGraph g = testutil::graph_from_pairs(9, pairs);
  auto hops = k_hop_neighborhood(g, 0, 3);
  CHECK(hops.size() == 8);
}

TEST_CASE("k-hop equals the BFS oracle on a random graph") {
  DirectedGraph g = testutil::random_graph(99, 100, 0.03);
  for (NodeId start : {0u, 17u, 42u, 99u}) {
    for (unsigned k = 1; k <= 4; ++k) {
      CHECK(k_hop_neighborhood(g, start, k) == bfs_oracle(g, start, k));
    }
  }
}

TEST_CASE("k-hop neighborhoods are monotone in k") {
  DirectedGraph g = testutil::random_graph(123, 80, 0.04);
  for (NodeId start = 0; start < g.node_count(); start += 9) {
    auto h1 = k_hop_neighborhood(g, start, 1);
    auto h2 = k_hop_neighborhood(g, start, 2);
    auto h3 = k_hop_neighborhood(g, start, 3);
    CHECK(std::includes(h2.begin(), h2.end(), h1.begin(), h1.end()));
    CHECK(std::includes(h3.begin(), h3.end(), h2.begin(), h2.end()));
  }
}

TEST_CASE("k-hop rejects bad arguments") {
  DirectedGraph g = testutil::graph_from_pairs(2, {{0, 1}});
  CHECK_THROWS_AS(k_hop_neighborhood(g, 5, 3), ValidationError);
  CHECK_THROWS_AS(k_hop_neighborhood(g, 0, 0), ValidationError);
}
