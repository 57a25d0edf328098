#include "old/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "old/errors.hpp"
#include "old/parallel.hpp"
#include "old/text.hpp"

namespace old {

namespace detail {

void finalize_ranking(RankingResult& r) {
  for (const auto& e : r.entries) {
    if (!std::isfinite(e.score)) {
      throw ValidationError(r.method + ": non-finite score for node " + std::to_string(e.node));
    }
  }
  std::sort(r.entries.begin(), r.entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.node < b.node;
  });
}

std::vector<double> edge_transition_probs(const DirectedGraph& g, const EmbeddingMatrix& emb,
                                          bool cosine) {
  const std::size_t n = g.node_count();
  const std::size_t dim = emb.dim();

  // optional pre-normalization: exp(dot) becomes exp(cosine)
  std::vector<double> normalized;
  const double* vecs = emb.data().data();
  if (cosine) {
    normalized = emb.data();
    for (std::size_t i = 0; i < n; ++i) {
      double* row = normalized.data() + i * dim;
      double norm = 0.0;
      for (std::size_t d = 0; d < dim; ++d) norm += row[d] * row[d];
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (std::size_t d = 0; d < dim; ++d) row[d] /= norm;
      }
    }
    vecs = normalized.data();
  }

  std::vector<double> probs(g.edge_count());
  std::size_t pos = 0;
  std::vector<double> dots;
  for (NodeId i = 0; i < n; ++i) {
    auto nbrs = g.out_neighbors(i);
    if (nbrs.empty()) continue;
    dots.resize(nbrs.size());
    const double* ui = vecs + static_cast<std::size_t>(i) * dim;
    double max_dot = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const double* uj = vecs + static_cast<std::size_t>(nbrs[k]) * dim;
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += ui[d] * uj[d];
      dots[k] = dot;
      max_dot = std::max(max_dot, dot);
    }
    // W_ij = exp(dot); normalizing with the row max subtracted keeps the
    // exponentials in range without changing the row distribution
    double total = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      dots[k] = std::exp(dots[k] - max_dot);
      total += dots[k];
    }
    for (std::size_t k = 0; k < nbrs.size(); ++k) probs[pos + k] = dots[k] / total;
    pos += nbrs.size();
  }
  return probs;
}

}  // namespace detail

RankingResult nlc_rank(const DirectedGraph& g, const EmbeddingMatrix& emb,
                       const NodeMetrics& metrics, int threads) {
  const std::size_t n = g.node_count();
  if (emb.node_count() != n) {
    throw ValidationError("nlc_rank: embedding rows do not match graph node count");
  }
  if (metrics.core.size() != n) {
    throw ValidationError("nlc_rank: metrics do not match graph node count");
  }
  const std::size_t dim = emb.dim();

  RankingResult r;
  r.method = "nlcrank";
  r.params = {{"hops", "3"}};
  r.entries.resize(n);

  parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
    // stamp-based depth-limited BFS, one scratch set per worker
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<NodeId> frontier, next;
    std::uint32_t epoch = 0;
    for (std::size_t i = begin; i < end; ++i) {
      ++epoch;
      const double ks = static_cast<double>(metrics.core[i]);
      const double* xi = emb.data().data() + i * dim;
      double score = 0.0;
      stamp[i] = epoch;
      frontier.assign(1, static_cast<NodeId>(i));
      for (int depth = 0; depth < 3 && !frontier.empty(); ++depth) {
        next.clear();
        for (NodeId u : frontier) {
          for (NodeId w : g.undirected_neighbors(u)) {
            if (stamp[w] == epoch) continue;
            stamp[w] = epoch;
            next.push_back(w);
            const double* xj = emb.data().data() + static_cast<std::size_t>(w) * dim;
            double dist2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
              double diff = xi[d] - xj[d];
              dist2 += diff * diff;
            }
            score += ks * std::exp(-dist2);
          }
        }
        frontier.swap(next);
      }
      r.entries[i] = {static_cast<NodeId>(i), score};
    }
  });

  detail::finalize_ranking(r);
  return r;
}

RankingResult asne_rank(const DirectedGraph& g, const EmbeddingMatrix& emb,
                        const PageRankParams& params, int threads) {
  const std::size_t n = g.node_count();
  if (n == 0) throw ValidationError("asne_rank: empty graph");
  if (emb.node_count() != n) {
    throw ValidationError("asne_rank: embedding rows do not match graph node count");
  }
  if (!(params.damping > 0.0 && params.damping < 1.0)) {
    throw ValidationError("asne_rank: damping must be in (0,1)");
  }

  std::vector<double> probs = detail::edge_transition_probs(g, emb, params.cosine);

  // transpose: per in-edge transition probability, aligned with in-neighbor
  // order so each destination row accumulates in a fixed order
  std::vector<double> in_probs(g.edge_count());
  {
    std::vector<std::size_t> out_base(n, 0);
    std::size_t acc = 0;
    for (NodeId i = 0; i < n; ++i) {
      out_base[i] = acc;
      acc += g.out_degree(i);
    }
    std::size_t in_pos = 0;
    for (NodeId j = 0; j < n; ++j) {
      for (NodeId src : g.in_neighbors(j)) {
        auto nbrs = g.out_neighbors(src);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
        std::size_t k = static_cast<std::size_t>(it - nbrs.begin());
        in_probs[in_pos++] = probs[out_base[src] + k];
      }
    }
  }

  std::vector<NodeId> dangling;
  for (NodeId i = 0; i < n; ++i) {
    if (g.out_degree(i) == 0) dangling.push_back(i);
  }

  const double d = params.damping;
  const double teleport = (1.0 - d) / static_cast<double>(n);
  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<std::size_t> in_base(n, 0);
  {
    std::size_t acc = 0;
    for (NodeId j = 0; j < n; ++j) {
      in_base[j] = acc;
      acc += g.in_degree(j);
    }
  }
  for (int iter = 0; iter < params.max_iter; ++iter) {
    double dangle_mass = 0.0;
    for (NodeId i : dangling) dangle_mass += rank[i];
    double base = teleport + d * dangle_mass / static_cast<double>(n);

    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        auto sources = g.in_neighbors(static_cast<NodeId>(j));
        double acc = 0.0;
        const double* p = in_probs.data() + in_base[j];
        for (std::size_t k = 0; k < sources.size(); ++k) acc += rank[sources[k]] * p[k];
        next[j] = base + d * acc;
      }
    });

    residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) residual += std::abs(next[j] - rank[j]);
    rank.swap(next);
    ++iterations;
    if (residual < params.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("asne_rank: no convergence after " + std::to_string(iterations) +
                               " iterations (L1 residual " + format_double(residual) + ")",
                           residual);
  }

  // exact unit mass, drift from fp accumulation removed
  double sum = 0.0;
  for (double v : rank) sum += v;
  for (double& v : rank) v /= sum;

  RankingResult r;
  r.method = "asnerank";
  r.params = {{"damping", format_double(params.damping)},
              {"tolerance", format_double(params.tolerance)},
              {"max_iter", std::to_string(params.max_iter)},
              {"cosine", params.cosine ? "true" : "false"},
              {"iterations", std::to_string(iterations)}};
  r.entries.resize(n);
  for (NodeId i = 0; i < n; ++i) r.entries[i] = {i, rank[i]};
  detail::finalize_ranking(r);
  return r;
}

RankingResult leader_rank(const DirectedGraph& g, double tolerance, int max_iter) {
  const std::size_t n = g.node_count();
  if (n == 0) throw ValidationError("leader_rank: empty graph");

  // ground node g* has index n; every node gains one out-edge (to g*) and
  // one in-edge (from g*)
  std::vector<double> s(n + 1, 1.0);
  s[n] = 0.0;
  std::vector<double> next(n + 1, 0.0);
  std::vector<double> reported(n, 1.0), reported_next(n);

  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    double ground_in = 0.0;  // sum of s_i / outdeg_aug(i)
    for (NodeId i = 0; i < n; ++i) ground_in += s[i] / static_cast<double>(g.out_degree(i) + 1);
    double from_ground = s[n] / static_cast<double>(n);
    for (NodeId j = 0; j < n; ++j) {
      double acc = from_ground;
      for (NodeId i : g.in_neighbors(j)) acc += s[i] / static_cast<double>(g.out_degree(i) + 1);
      next[j] = acc;
    }
    next[n] = ground_in;
    s.swap(next);
    ++iterations;

    // convergence is judged on the reported scores s_i + s_g/N: the raw
    // vector can oscillate with period two on bipartite-like structures
    // while the reported scores are already stationary
    double ground_share = s[n] / static_cast<double>(n);
    residual = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      reported_next[i] = s[i] + ground_share;
      residual += std::abs(reported_next[i] - reported[i]);
    }
    reported.swap(reported_next);
    if (residual < tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("leader_rank: no convergence after " + std::to_string(iterations) +
                               " iterations (L1 residual " + format_double(residual) + ")",
                           residual);
  }

  RankingResult r;
  r.method = "leaderrank";
  r.params = {{"tolerance", format_double(tolerance)},
              {"max_iter", std::to_string(max_iter)},
              {"iterations", std::to_string(iterations)}};
  r.entries.resize(n);
  for (NodeId i = 0; i < n; ++i) r.entries[i] = {i, reported[i]};
  detail::finalize_ranking(r);
  return r;
}

std::vector<NodeId> top_n(const RankingResult& r, std::size_t n) {
  if (n < 1 || n > r.entries.size()) {
    throw ValidationError("top_n: n=" + std::to_string(n) + " outside [1, " +
                          std::to_string(r.entries.size()) + "]");
  }
  std::vector<NodeId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(r.entries[i].node);
  return out;
}

void write_ranking_csv(const RankingResult& r, const DirectedGraph& g, std::ostream& out) {
  out << "rank,external_id,score,method\n";
  std::size_t rank = 1;
  for (const auto& e : r.entries) {
    out << rank++ << ',' << g.external_id(e.node) << ',' << format_double(e.score) << ','
        << r.method << '\n';
  }
}

void write_ranking_json(const RankingResult& r, const DirectedGraph& g, std::ostream& out) {
  out << "{\"method\":\"" << r.method << "\",\"params\":{";
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i) out << ',';
    out << '"' << r.params[i].first << "\":\"" << r.params[i].second << '"';
  }
  out << "},\"entries\":[";
  std::size_t rank = 1;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    if (i) out << ',';
    out << "{\"rank\":" << rank++ << ",\"id\":\"" << g.external_id(r.entries[i].node)
        << "\",\"score\":" << format_double(r.entries[i].score) << '}';
  }
  out << "]}\n";
}

RankingResult read_ranking_csv(std::istream& in, const DirectedGraph& g,
                               const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "rank,external_id,score,method") {
    throw ParseError(source_name + ": bad ranking header");
  }
  RankingResult r;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    std::string where = source_name + " line " + std::to_string(line_no);
    auto fields = split(body, ',');
    if (fields.size() != 4) throw ParseError(where + ": expected 4 fields");
    auto node = g.find(fields[1]);
    if (!node) throw ParseError(where + ": unknown id '" + std::string(fields[1]) + "'");
    r.entries.push_back({*node, parse_double(fields[2], where)});
    if (r.method.empty()) r.method = std::string(fields[3]);
  }
  if (r.entries.size() != g.node_count()) {
    throw ValidationError(source_name + ": ranking does not cover every node");
  }
  return r;
}

}  // namespace old
