#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "old/graph.hpp"

namespace old {

struct AttributeLoadReport {
  std::size_t rows_matched = 0;
  std::size_t unknown_ids_skipped = 0;
  std::vector<NodeId> nodes_missing;  // zero-filled
  bool covers_no_node() const { return rows_matched == 0; }
};

// Per-node real attribute vectors plus an optional attitude triple
// (support, reject, irrelevant). One row per graph node; nodes absent from
// the source file hold the zero vector. Immutable after load.
class AttributeTable {
 public:
  AttributeTable() = default;
  AttributeTable(std::size_t node_count, std::size_t dim);

  std::size_t node_count() const { return node_count_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(NodeId i) const { return {values_.data() + i * dim_, dim_}; }
  std::span<double> row(NodeId i) { return {values_.data() + i * dim_, dim_}; }

  bool any_attitudes() const { return !attitudes_.empty(); }
  bool has_attitude(NodeId i) const { return !attitudes_.empty() && has_attitude_[i]; }
  // (support, reject, irrelevant)
  std::array<double, 3> attitude(NodeId i) const;
  void set_attitude(NodeId i, std::array<double, 3> triple);

  const std::vector<std::string>& columns() const { return columns_; }
  void set_columns(std::vector<std::string> names) { columns_ = std::move(names); }

 private:
  std::size_t node_count_ = 0, dim_ = 0;
  std::vector<double> values_;
  std::vector<std::string> columns_;
  std::vector<std::array<double, 3>> attitudes_;
  std::vector<std::uint8_t> has_attitude_;
};

// CSV with a header row; first column is the external node id. Columns named
// support/reject/irrelevant (any case) form the attitude triple; every other
// column is a numeric attribute dimension. Unknown external ids are skipped
// and counted; graph nodes not covered get the zero vector.
AttributeTable load_attributes(std::istream& in, const DirectedGraph& graph,
                               AttributeLoadReport* report = nullptr,
                               const std::string& source_name = "<attributes>");
AttributeTable load_attributes_file(const std::string& path, const DirectedGraph& graph,
                                    AttributeLoadReport* report = nullptr);

// Binary cache ("OLAT"), bit-exact round trip.
void save_attributes_binary(const AttributeTable& t, std::ostream& out);
void save_attributes_binary(const AttributeTable& t, const std::string& path);
AttributeTable load_attributes_binary(const std::string& path);

}  // namespace old
