#include "old/asne.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "old/errors.hpp"
#include "old/rng.hpp"

namespace old {

namespace {

constexpr std::uint64_t kInitTag = 0x61736e6501;
constexpr std::uint64_t kShuffleTag = 0x61736e6502;
constexpr std::uint64_t kNegTag = 0x61736e6503;

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

EmbeddingMatrix train_asne_lite(const DirectedGraph& g, const AttributeTable& attrs,
                                const AsneConfig& cfg, AsneStats* stats) {
  const std::size_t n = g.node_count();
  if (attrs.node_count() != n) {
    throw ValidationError("train_asne_lite: attribute table not aligned to graph");
  }
  if (g.edge_count() == 0) {
    throw ValidationError("train_asne_lite: graph has no edges (no training signal)");
  }
  if (cfg.d_struct < 1 || cfg.d_attr_emb < 1) {
    throw ValidationError("train_asne_lite: d_struct and d_attr_emb must be >= 1");
  }
  if (cfg.batch < 1) throw ValidationError("train_asne_lite: batch must be >= 1");

  const int ds = cfg.d_struct;
  const int da = cfg.d_attr_emb;
  const int fused = ds + da;
  const std::size_t d_attr = attrs.dim();

  // parameters: structure lookup S (n x ds), attribute map M (d_attr x da),
  // context table C (n x fused)
  std::vector<double> S(n * ds), M(d_attr * da), C(n * fused);
  {
    Rng rng(derive_seed(cfg.rng_seed, {kInitTag}));
    for (double& v : S) v = (rng.next_double() - 0.5) / ds;
    for (double& v : M) v = (rng.next_double() - 0.5) / da;
    for (double& v : C) v = (rng.next_double() - 0.5) / fused;
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.edge_count());
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.out_neighbors(u)) edges.emplace_back(u, v);
  }

  auto fuse = [&](NodeId i, std::vector<double>& out) {
    const double* s = S.data() + static_cast<std::size_t>(i) * ds;
    for (int d = 0; d < ds; ++d) out[d] = s[d];
    auto a = attrs.row(i);
    for (int k = 0; k < da; ++k) {
      double acc = 0.0;
      for (std::size_t t = 0; t < d_attr; ++t) acc += a[t] * M[t * da + k];
      out[ds + k] = acc;
    }
  };

  if (stats) stats->epoch_loss.clear();
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<double> f(fused), g_f(fused);
  std::unordered_map<NodeId, std::vector<double>> s_grad, c_grad;
  std::vector<double> m_grad(M.size());

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(cfg.rng_seed, {kShuffleTag, static_cast<std::uint64_t>(epoch)}));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = shuffle_rng.next_below(i);
      std::swap(order[i - 1], order[j]);
    }
    Rng neg_rng(derive_seed(cfg.rng_seed, {kNegTag, static_cast<std::uint64_t>(epoch)}));

    double epoch_loss = 0.0;
    std::size_t samples = 0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
      std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch));
      s_grad.clear();
      c_grad.clear();
      std::fill(m_grad.begin(), m_grad.end(), 0.0);

      for (std::size_t e = start; e < stop; ++e) {
        auto [i, j] = edges[order[e]];
        fuse(i, f);
        std::fill(g_f.begin(), g_f.end(), 0.0);

        auto score_against = [&](NodeId ctx, double sign) {
          // sign +1: positive edge, -1: negative sample
          const double* c = C.data() + static_cast<std::size_t>(ctx) * fused;
          double dot = 0.0;
          for (int d = 0; d < fused; ++d) dot += f[d] * c[d];
          double s = sigmoid(sign * dot);
          double coeff = sign * (s - 1.0);  // d loss / d dot, loss = -log s
          auto& cg = c_grad.try_emplace(ctx, fused).first->second;
          for (int d = 0; d < fused; ++d) {
            g_f[d] += coeff * c[d];
            cg[d] += coeff * f[d];
          }
          return -std::log(std::max(s, 1e-300));
        };

        double loss = score_against(j, 1.0);
        for (int k = 0; k < cfg.negatives; ++k) {
          NodeId cand = 0;
          bool found = false;
          for (int attempt = 0; attempt < 50; ++attempt) {
            cand = static_cast<NodeId>(neg_rng.next_below(n));
            if (cand != i && !g.has_edge(i, cand)) {
              found = true;
              break;
            }
          }
          if (!found) continue;  // nearly-complete out-neighborhood
          loss += score_against(cand, -1.0);
        }
        epoch_loss += loss;
        ++samples;

        auto& sg = s_grad.try_emplace(i, ds).first->second;
        for (int d = 0; d < ds; ++d) sg[d] += g_f[d];
        auto a = attrs.row(i);
        for (std::size_t t = 0; t < d_attr; ++t) {
          if (a[t] == 0.0) continue;
          for (int k = 0; k < da; ++k) m_grad[t * da + k] += a[t] * g_f[ds + k];
        }
      }

      // mean-gradient step, rows applied in ascending id order
      double step = cfg.lr / static_cast<double>(stop - start);
      std::vector<NodeId> keys;
      keys.reserve(s_grad.size());
      for (const auto& [id, _] : s_grad) keys.push_back(id);
      std::sort(keys.begin(), keys.end());
      for (NodeId id : keys) {
        const auto& grad = s_grad[id];
        double* row = S.data() + static_cast<std::size_t>(id) * ds;
        for (int d = 0; d < ds; ++d) row[d] -= step * grad[d];
      }
      keys.clear();
      for (const auto& [id, _] : c_grad) keys.push_back(id);
      std::sort(keys.begin(), keys.end());
      for (NodeId id : keys) {
        const auto& grad = c_grad[id];
        double* row = C.data() + static_cast<std::size_t>(id) * fused;
        for (int d = 0; d < fused; ++d) row[d] -= step * grad[d];
      }
      for (std::size_t t = 0; t < M.size(); ++t) M[t] -= step * m_grad[t];
    }

    if (stats) stats->epoch_loss.push_back(epoch_loss / static_cast<double>(samples));
  }

  EmbeddingMatrix out(n, fused);
  std::vector<double> row(fused);
  for (NodeId i = 0; i < n; ++i) {
    fuse(i, row);
    std::copy(row.begin(), row.end(), out.row(i).begin());
  }
  if (!out.all_finite()) {
    throw ValidationError("train_asne_lite: training diverged to non-finite values; lower lr");
  }
  return out;
}

}  // namespace old
