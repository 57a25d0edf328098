#include "old/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "old/errors.hpp"
#include "old/parallel.hpp"
#include "old/rng.hpp"

namespace old {

namespace {

constexpr std::uint64_t kWalkTag = 0x77616c6b;  // "walk"

std::span<const NodeId> traversal_neighbors(const DirectedGraph& g, WalkDirection dir, NodeId u) {
  return dir == WalkDirection::OutEdges ? g.out_neighbors(u) : g.undirected_neighbors(u);
}

bool traversal_has_edge(const DirectedGraph& g, WalkDirection dir, NodeId u, NodeId v) {
  return dir == WalkDirection::OutEdges ? g.has_edge(u, v) : g.has_undirected_edge(u, v);
}

}  // namespace

WalkCorpus generate_walks(const DirectedGraph& g, const WalkConfig& cfg, int threads) {
  if (g.node_count() == 0) throw ValidationError("generate_walks: empty graph");
  if (cfg.walk_length < 1) throw ValidationError("walk_length must be >= 1");
  if (cfg.num_walks < 1) throw ValidationError("num_walks must be >= 1");
  if (cfg.biased && (!(cfg.p > 0.0) || !(cfg.q > 0.0))) {
    throw ValidationError("node2vec parameters p and q must be > 0");
  }

  const std::size_t n = g.node_count();
  WalkCorpus corpus;
  corpus.node_count = n;
  corpus.walks.resize(static_cast<std::size_t>(cfg.num_walks) * n);
  std::atomic<std::size_t> truncated{0};

  parallel_blocks(corpus.walks.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> weights;
    std::size_t local_truncated = 0;
    for (std::size_t task = begin; task < end; ++task) {
      std::size_t walk_index = task / n;
      NodeId start = static_cast<NodeId>(task % n);
      Rng rng(derive_seed(cfg.rng_seed, {kWalkTag, walk_index, start}));

      auto& walk = corpus.walks[task];
      walk.clear();
      walk.reserve(cfg.walk_length);
      walk.push_back(start);
      NodeId cur = start;
      while (walk.size() < static_cast<std::size_t>(cfg.walk_length)) {
        auto nbrs = traversal_neighbors(g, cfg.direction, cur);
        if (nbrs.empty()) {
          ++local_truncated;
          break;
        }
        NodeId next;
        if (!cfg.biased || walk.size() == 1) {
          next = nbrs[rng.next_below(nbrs.size())];
        } else {
          NodeId prev = walk[walk.size() - 2];
          weights.resize(nbrs.size());
          double total = 0.0;
          for (std::size_t k = 0; k < nbrs.size(); ++k) {
            NodeId cand = nbrs[k];
            double w;
            if (cand == prev) {
              w = 1.0 / cfg.p;
            } else if (traversal_has_edge(g, cfg.direction, prev, cand)) {
              w = 1.0;
            } else {
              w = 1.0 / cfg.q;
            }
            weights[k] = w;
            total += w;
          }
          double x = rng.next_double() * total;
          std::size_t pick = 0;
          double acc = weights[0];
          while (pick + 1 < nbrs.size() && x >= acc) acc += weights[++pick];
          next = nbrs[pick];
        }
        walk.push_back(next);
        cur = next;
      }
    }
    truncated.fetch_add(local_truncated, std::memory_order_relaxed);
  });

  corpus.truncated = truncated.load();
  return corpus;
}

}  // namespace old
