#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "old/graph.hpp"

namespace old {

// Dense node_count x dim real matrix, one row per node.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t node_count, std::size_t dim)
      : node_count_(node_count), dim_(dim), data_(node_count * dim, 0.0) {}

  std::size_t node_count() const { return node_count_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(NodeId i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<double> row(NodeId i) { return {data_.data() + i * dim_, dim_}; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const;

 private:
  std::size_t node_count_ = 0, dim_ = 0;
  std::vector<double> data_;
};

// CSV: header "id,v0,...,v{dim-1}", one row per node, shortest round-trip
// float formatting. Rows may arrive in any order on read; every graph node
// must appear exactly once.
void write_embedding_csv(const EmbeddingMatrix& m, const DirectedGraph& g, std::ostream& out);
EmbeddingMatrix read_embedding_csv(std::istream& in, const DirectedGraph& g,
                                   const std::string& source_name = "<embedding csv>");

// Binary: magic "OLEM", version u32, node_count u64, dim u32, row-major
// float64, little-endian throughout.
void write_embedding_binary(const EmbeddingMatrix& m, std::ostream& out);
void write_embedding_binary(const EmbeddingMatrix& m, const std::string& path);
EmbeddingMatrix read_embedding_binary(const std::string& path);

}  // namespace old
