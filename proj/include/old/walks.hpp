#pragma once

#include <cstdint>
#include <vector>

#include "old/graph.hpp"

namespace old {

enum class WalkDirection { OutEdges, Undirected };

struct WalkConfig {
  int walk_length = 80;
  int num_walks = 10;  // walks started per node
  int window = 10;     // carried along for the skip-gram stage
  bool biased = false; // false: uniform next hop (DeepWalk)
  double p = 1.0;      // return parameter (node2vec)
  double q = 1.0;      // in-out parameter (node2vec)
  WalkDirection direction = WalkDirection::OutEdges;
  std::uint64_t rng_seed = 0;
};

struct WalkCorpus {
  std::vector<std::vector<NodeId>> walks;  // walk (w, v) at index w * node_count + v
  std::size_t node_count = 0;
  std::size_t truncated = 0;  // walks cut short at a sink
};

// num_walks walks from every node. Uniform strategy draws the next hop
// uniformly from the traversal-direction neighbors; the biased strategy
// weights candidates 1/p (back to the previous node), 1 (neighbor of the
// previous node), 1/q (otherwise) and normalizes. Walks stop early at nodes
// with no neighbors in the traversal direction. Each (walk, start) pair has
// its own RNG stream derived from rng_seed, so results do not depend on the
// thread count.
WalkCorpus generate_walks(const DirectedGraph& g, const WalkConfig& cfg, int threads = 1);

}  // namespace old
