#pragma once

#include <cstdint>
#include <vector>

#include "old/graph.hpp"

namespace old {

struct NodeMetrics {
  std::vector<std::uint32_t> core;  // k-shell value on the undirected projection
  std::vector<std::uint32_t> in_degree;
  std::vector<std::uint32_t> out_degree;
};

// Core numbers by iterative minimum-degree peeling of the undirected
// projection (Batagelj-Zaversnik bucket algorithm, O(V+E)).
NodeMetrics k_shell(const DirectedGraph& g);

// All nodes at undirected distance 1..k from `node`, ascending id, the node
// itself excluded. k >= 1.
std::vector<NodeId> k_hop_neighborhood(const DirectedGraph& g, NodeId node, unsigned k = 3);

}  // namespace old
