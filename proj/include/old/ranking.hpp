#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "old/embedding.hpp"
#include "old/graph.hpp"
#include "old/kshell.hpp"

namespace old {

struct RankingEntry {
  NodeId node;
  double score;
};

// Total order over all graph nodes: score descending, ties by ascending
// node id. Deterministic given identical inputs.
struct RankingResult {
  std::string method;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<RankingEntry> entries;
};

struct PageRankParams {
  double damping = 0.85;
  double tolerance = 1e-10;  // L1 stopping criterion
  int max_iter = 1000;
  bool cosine = false;  // normalize rows first: weights become exp(cosine)
};

// NLC(i) = sum over j in the 3-hop undirected neighborhood of
// Ks_i * exp(-|x_i - x_j|^2). Nodes with an empty neighborhood score 0.
RankingResult nlc_rank(const DirectedGraph& g, const EmbeddingMatrix& emb,
                       const NodeMetrics& metrics, int threads = 1);

// PageRank over follow edges with weight exp(u_j . u_i) for each followee j
// of i, row-normalized (max-subtracted softmax); dangling rows redistribute
// uniformly. Scores sum to 1.
RankingResult asne_rank(const DirectedGraph& g, const EmbeddingMatrix& emb,
                        const PageRankParams& params = {}, int threads = 1);

// Parameter-free baseline: ground node bidirectionally linked to every node,
// unit scores spread synchronously along out-edges; reported score is
// s_i + s_ground/N.
RankingResult leader_rank(const DirectedGraph& g, double tolerance = 1e-10, int max_iter = 1000);

// First n nodes of the total order; n must be in [1, node_count].
std::vector<NodeId> top_n(const RankingResult& r, std::size_t n);

// CSV "rank,external_id,score,method"; JSON carries params too.
void write_ranking_csv(const RankingResult& r, const DirectedGraph& g, std::ostream& out);
void write_ranking_json(const RankingResult& r, const DirectedGraph& g, std::ostream& out);
RankingResult read_ranking_csv(std::istream& in, const DirectedGraph& g,
                               const std::string& source_name = "<ranking csv>");

namespace detail {

// Sorts entries into the canonical order (score desc, id asc).
void finalize_ranking(RankingResult& r);

// Per-out-edge transition probabilities, aligned with out-neighbor order.
std::vector<double> edge_transition_probs(const DirectedGraph& g, const EmbeddingMatrix& emb,
                                          bool cosine);

}  // namespace detail

}  // namespace old
