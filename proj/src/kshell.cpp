#include "old/kshell.hpp"

#include <algorithm>

#include "old/errors.hpp"

namespace old {

NodeMetrics k_shell(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  NodeMetrics m;
  m.in_degree.resize(n);
  m.out_degree.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    m.in_degree[i] = static_cast<std::uint32_t>(g.in_degree(i));
    m.out_degree[i] = static_cast<std::uint32_t>(g.out_degree(i));
  }

  m.core.assign(n, 0);
  if (n == 0) return m;

  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (NodeId i = 0; i < n; ++i) {
    deg[i] = static_cast<std::uint32_t>(g.undirected_degree(i));
    max_deg = std::max(max_deg, deg[i]);
  }

  // bucket sort nodes by current degree
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (NodeId i = 0; i < n; ++i) bin[deg[i] + 1]++;
  for (std::size_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
  std::vector<NodeId> vert(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> cursor(bin.begin(), bin.end() - 1);
    for (NodeId i = 0; i < n; ++i) {
      pos[i] = cursor[deg[i]]++;
      vert[pos[i]] = i;
    }
  }

  for (std::size_t idx = 0; idx < n; ++idx) {
    NodeId v = vert[idx];
    m.core[v] = deg[v];
    for (NodeId w : g.undirected_neighbors(v)) {
      if (deg[w] > deg[v]) {
        // swap w with the first node of its bucket, then shrink the bucket
        std::uint32_t dw = deg[w];
        std::size_t first = bin[dw];
        NodeId u = vert[first];
        if (u != w) {
          std::swap(vert[pos[w]], vert[first]);
          std::swap(pos[w], pos[u]);
        }
        bin[dw]++;
        deg[w]--;
      }
    }
  }
  return m;
}

std::vector<NodeId> k_hop_neighborhood(const DirectedGraph& g, NodeId node, unsigned k) {
  g.check_node(node);
  if (k < 1) throw ValidationError("k_hop_neighborhood requires k >= 1");

  std::vector<NodeId> frontier{node};
  std::vector<NodeId> next;
  std::vector<std::uint8_t> visited(g.node_count(), 0);
  visited[node] = 1;
  std::vector<NodeId> result;
  for (unsigned depth = 0; depth < k && !frontier.empty(); ++depth) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId w : g.undirected_neighbors(u)) {
        if (!visited[w]) {
          visited[w] = 1;
          next.push_back(w);
          result.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace old
