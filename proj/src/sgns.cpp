#include "old/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "old/alias.hpp"
#include "old/errors.hpp"
#include "old/parallel.hpp"
#include "old/rng.hpp"

namespace old {

namespace detail {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double dot(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += a[d] * b[d];
  return s;
}

}  // namespace

double sgns_sample_loss(const double* center, const double* positive,
                        const double* const* negatives, int n_neg, int dim) {
  double loss = -std::log(sigmoid(dot(center, positive, dim)));
  for (int k = 0; k < n_neg; ++k) {
    loss -= std::log(sigmoid(-dot(center, negatives[k], dim)));
  }
  return loss;
}

double sgns_sample_grads(const double* center, const double* positive,
                         const double* const* negatives, int n_neg, int dim, double* g_center,
                         double* g_positive, double* const* g_negatives) {
  double s_pos = sigmoid(dot(center, positive, dim));
  double loss = -std::log(s_pos);
  double c_pos = s_pos - 1.0;  // d loss / d (v.u+)
  for (int d = 0; d < dim; ++d) {
    g_center[d] = c_pos * positive[d];
    g_positive[d] = c_pos * center[d];
  }
  for (int k = 0; k < n_neg; ++k) {
    double s_neg = sigmoid(dot(center, negatives[k], dim));
    loss -= std::log(1.0 - s_neg);
    for (int d = 0; d < dim; ++d) {
      g_center[d] += s_neg * negatives[k][d];
      g_negatives[k][d] = s_neg * center[d];
    }
  }
  return loss;
}

std::vector<double> sgns_noise_weights(const WalkCorpus& corpus) {
  std::vector<double> freq(corpus.node_count, 0.0);
  for (const auto& walk : corpus.walks) {
    for (NodeId v : walk) freq[v] += 1.0;
  }
  for (double& f : freq) f = std::pow(f, 0.75);
  return freq;
}

}  // namespace detail

namespace {

constexpr std::uint64_t kInitTag = 0x73676e7301;
constexpr std::uint64_t kTrainTag = 0x73676e7302;

std::size_t walk_pair_count(std::size_t len, int window) {
  std::size_t pairs = 0;
  for (std::size_t t = 0; t < len; ++t) {
    std::size_t lo = t >= static_cast<std::size_t>(window) ? t - window : 0;
    std::size_t hi = std::min(len - 1, t + window);
    pairs += hi - lo;  // excludes t itself
  }
  return pairs;
}

}  // namespace

EmbeddingMatrix train_sgns(const WalkCorpus& corpus, const SgnsConfig& cfg, SgnsStats* stats) {
  if (corpus.walks.empty() || corpus.node_count == 0) {
    throw ValidationError("train_sgns: empty corpus");
  }
  if (cfg.dim < 2) throw ValidationError("train_sgns: dim must be >= 2");
  if (cfg.window < 1) throw ValidationError("train_sgns: window must be >= 1");
  if (cfg.epochs < 1) throw ValidationError("train_sgns: epochs must be >= 1");

  const std::size_t n = corpus.node_count;
  const int dim = cfg.dim;

  std::size_t pairs_per_epoch = 0;
  for (const auto& walk : corpus.walks) {
    pairs_per_epoch += walk_pair_count(walk.size(), cfg.window);
  }
  if (pairs_per_epoch == 0) throw ValidationError("train_sgns: corpus holds no context pairs");
  if (stats) {
    stats->total_pairs = pairs_per_epoch;
    stats->epoch_loss.clear();
  }

  AliasTable noise_table(detail::sgns_noise_weights(corpus));

  EmbeddingMatrix input(n, dim);
  std::vector<double> output(n * dim, 0.0);  // context vectors start at zero
  {
    Rng init_rng(derive_seed(cfg.rng_seed, {kInitTag}));
    auto& data = input.data();
    for (double& v : data) v = (init_rng.next_double() - 0.5) / dim;
  }

  const double lr_start = cfg.lr;
  const double lr_end = cfg.lr / 100.0;
  const double total_updates =
      static_cast<double>(pairs_per_epoch) * static_cast<double>(cfg.epochs);
  std::atomic<std::size_t> processed{0};

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::atomic<double> epoch_loss{0.0};
    int workers = resolve_threads(cfg.threads);
    parallel_blocks(corpus.walks.size(), workers, [&](std::size_t begin, std::size_t end) {
      Rng rng(derive_seed(cfg.rng_seed, {kTrainTag, static_cast<std::uint64_t>(epoch), begin}));
      std::vector<double> g_center(dim), g_positive(dim);
      std::vector<std::vector<double>> g_neg(cfg.negatives, std::vector<double>(dim));
      std::vector<double*> g_neg_ptrs(cfg.negatives);
      std::vector<const double*> neg_ptrs(cfg.negatives);
      std::vector<std::size_t> neg_ids(cfg.negatives);
      for (int k = 0; k < cfg.negatives; ++k) g_neg_ptrs[k] = g_neg[k].data();
      double local_loss = 0.0;

      for (std::size_t wi = begin; wi < end; ++wi) {
        const auto& walk = corpus.walks[wi];
        const std::size_t len = walk.size();
        for (std::size_t t = 0; t < len; ++t) {
          NodeId center = walk[t];
          std::size_t lo = t >= static_cast<std::size_t>(cfg.window) ? t - cfg.window : 0;
          std::size_t hi = std::min(len - 1, t + static_cast<std::size_t>(cfg.window));
          for (std::size_t c = lo; c <= hi; ++c) {
            if (c == t) continue;
            NodeId context = walk[c];

            int n_neg = 0;
            for (int k = 0; k < cfg.negatives; ++k) {
              std::size_t neg = noise_table.sample(rng);
              if (neg == context) continue;  // word2vec skip rule
              neg_ids[n_neg] = neg;
              neg_ptrs[n_neg] = output.data() + neg * dim;
              ++n_neg;
            }

            double* v = input.row(center).data();
            double* u_pos = output.data() + static_cast<std::size_t>(context) * dim;
            double loss = detail::sgns_sample_grads(v, u_pos, neg_ptrs.data(), n_neg, dim,
                                                    g_center.data(), g_positive.data(),
                                                    g_neg_ptrs.data());
            local_loss += loss;

            std::size_t done = processed.fetch_add(1, std::memory_order_relaxed);
            double frac = static_cast<double>(done) / total_updates;
            double lr = lr_start + (lr_end - lr_start) * frac;

            for (int d = 0; d < dim; ++d) v[d] -= lr * g_center[d];
            for (int d = 0; d < dim; ++d) u_pos[d] -= lr * g_positive[d];
            for (int k = 0; k < n_neg; ++k) {
              double* u_neg = output.data() + neg_ids[k] * dim;
              for (int d = 0; d < dim; ++d) u_neg[d] -= lr * g_neg[k][d];
            }
          }
        }
      }
      double expected = epoch_loss.load();
      while (!epoch_loss.compare_exchange_weak(expected, expected + local_loss)) {
      }
    });
    if (stats) {
      stats->epoch_loss.push_back(epoch_loss.load() / static_cast<double>(pairs_per_epoch));
    }
  }
  if (!input.all_finite()) {
    throw ValidationError("train_sgns: training diverged to non-finite values; lower lr");
  }
  return input;
}

}  // namespace old
