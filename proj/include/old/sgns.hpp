#pragma once

#include <cstdint>
#include <vector>

#include "old/embedding.hpp"
#include "old/walks.hpp"

namespace old {

struct SgnsConfig {
  int dim = 64;
  int window = 10;
  int negatives = 5;
  int epochs = 5;
  double lr = 0.025;  // decays linearly to lr/100 over all pairs
  std::uint64_t rng_seed = 0;
  int threads = 1;  // >1 applies unsynchronized concurrent updates (nondeterministic)
};

struct SgnsStats {
  std::vector<double> epoch_loss;  // mean sample loss per epoch
  std::size_t total_pairs = 0;     // (center, context) pairs per epoch
};

// Skip-gram with negative sampling over the walk corpus. Noise distribution
// is corpus frequency^0.75; negatives equal to the context node are skipped.
// Deterministic for threads == 1.
EmbeddingMatrix train_sgns(const WalkCorpus& corpus, const SgnsConfig& cfg,
                           SgnsStats* stats = nullptr);

namespace detail {

// Unnormalized negative-sampling weights: corpus frequency^0.75 per node.
std::vector<double> sgns_noise_weights(const WalkCorpus& corpus);

// Loss of one (center, positive, negatives) sample:
//   -log s(v.u+) - sum_n log s(-v.un)
double sgns_sample_loss(const double* center, const double* positive,
                        const double* const* negatives, int n_neg, int dim);

// Analytic gradients of the same loss; returns the loss value. Each gradient
// buffer is dim-sized and overwritten.
double sgns_sample_grads(const double* center, const double* positive,
                         const double* const* negatives, int n_neg, int dim, double* g_center,
                         double* g_positive, double* const* g_negatives);

}  // namespace detail

}  // namespace old
