#pragma once

#include <cstdint>
#include <vector>

#include "old/attributes.hpp"
#include "old/embedding.hpp"
#include "old/graph.hpp"

namespace old {

struct AsneConfig {
  int d_struct = 20;    // structure lookup dimension
  int d_attr_emb = 40;  // attribute projection dimension
  int epochs = 20;
  int batch = 128;
  int negatives = 5;
  double lr = 0.001;
  std::uint64_t rng_seed = 0;
};

struct AsneStats {
  std::vector<double> epoch_loss;  // mean sample loss per epoch
};

// Shallow early-fusion attributed embedder. Per node i the representation is
// concat(structure lookup of i, linear map of attrs(i)); training maximizes
// the likelihood of directed edges (i, j) against uniformly sampled
// non-neighbor negatives, mini-batch SGD with mean gradients. The returned
// matrix holds the fused vectors (dimension d_struct + d_attr_emb).
// Deterministic given rng_seed.
EmbeddingMatrix train_asne_lite(const DirectedGraph& g, const AttributeTable& attrs,
                                const AsneConfig& cfg, AsneStats* stats = nullptr);

}  // namespace old
