#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "old/attributes.hpp"
#include "old/graph.hpp"
#include "old/ranking.hpp"

namespace old {

struct MergedCandidate {
  NodeId node;
  double borda;  // sum over lists of (node_count - position)
  // 0-based position in each (filtered) source list, keyed by method tag
  std::vector<std::pair<std::string, std::size_t>> positions;
};

// Equal-weight Borda merge of rankings produced by one ranking algorithm
// across embedding methods. Nodes rejected by `keep` are removed from every
// list before positions are assigned. Ties break by ascending node id.
std::vector<MergedCandidate> merge_same_ranker(
    const std::vector<RankingResult>& lists,
    const std::function<bool(NodeId)>& keep = nullptr);

// Keeps a node unless BOTH its in-degree and out-degree fall strictly below
// the given percentile (nearest-rank) of the graph's degree distributions.
std::function<bool(NodeId)> outlier_keep_predicate(const DirectedGraph& g, double percentile);
std::vector<NodeId> apply_outlier_filter(const std::vector<NodeId>& nodes,
                                         const DirectedGraph& g, double percentile);

// Nearest-rank percentile of a sample; p in [0, 100).
double percentile_value(std::vector<double> values, double p);

struct CombineConfig {
  std::size_t n = 15;
  std::pair<int, int> ratio = {1, 2};  // ASNERank : NLCRank, rounding toward NLCRank
  double outlier_percentile = 10.0;
};

struct CombinedLeaders {
  std::vector<MergedCandidate> asnerank_part;
  std::vector<MergedCandidate> nlcrank_part;
};

// floor(n*r1/(r1+r2)) from the ASNERank merge, the rest from the NLCRank
// merge; a node present in both keeps its ASNERank slot and the NLCRank part
// backfills from the next candidate.
CombinedLeaders combine_leaders(const std::vector<MergedCandidate>& asnerank_merged,
                                const std::vector<MergedCandidate>& nlcrank_merged,
                                const CombineConfig& cfg);

struct AttitudeSummary {
  double support = 0.0, reject = 0.0, irrelevant = 0.0;
};

// Arithmetic mean of each attitude component over the node set. Every node
// must carry an attitude triple.
AttitudeSummary attitude_summary(const std::vector<NodeId>& nodes, const AttributeTable& attrs);

struct TopList {
  std::string label;
  std::vector<std::string> ids;  // external ids, rank order
};

struct PersistenceReport {
  struct AdjacentOverlap {
    std::string label_a, label_b;
    double jaccard;
  };
  struct NodeStat {
    std::string id;
    std::size_t appearances = 0;
    std::map<std::string, std::size_t> rank_by_label;  // 1-based
  };
  std::vector<AdjacentOverlap> adjacent;
  std::vector<NodeStat> nodes;  // ordered by appearances desc, then id asc
};

// Pairwise Jaccard similarity of adjacent top-k sets plus per-node
// appearance counts and ranks. Needs at least two snapshots.
PersistenceReport temporal_overlap(const std::vector<TopList>& lists);

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace old
