#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace old {

using NodeId = std::uint32_t;

struct IngestReport {
  std::size_t lines_read = 0;
  std::size_t edges_kept = 0;
  std::size_t duplicate_edges_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

// Immutable directed unweighted graph, CSR in both directions plus a
// deduplicated undirected projection. Edge u -> v means u follows v:
// v is a followee of u, u is a follower of v. Neighbor lists are sorted
// by node id. Safe to share across threads once built.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  // `edges` uses ids indexing into `external_ids`; self-loops and duplicate
  // edges are dropped (counted in `report` if given).
  static DirectedGraph from_edges(std::vector<std::pair<NodeId, NodeId>> edges,
                                  std::vector<std::string> external_ids,
                                  IngestReport* report = nullptr);

  std::size_t node_count() const { return external_ids_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  // followees of u (edges u -> v)
  std::span<const NodeId> out_neighbors(NodeId u) const;
  // followers of u (edges v -> u)
  std::span<const NodeId> in_neighbors(NodeId u) const;
  // deduplicated union of both directions
  std::span<const NodeId> undirected_neighbors(NodeId u) const;

  std::size_t out_degree(NodeId u) const;
  std::size_t in_degree(NodeId u) const;
  std::size_t undirected_degree(NodeId u) const;

  bool has_edge(NodeId u, NodeId v) const;             // directed u -> v
  bool has_undirected_edge(NodeId u, NodeId v) const;  // u -> v or v -> u

  const std::string& external_id(NodeId u) const { return external_ids_[u]; }
  const std::vector<std::string>& external_ids() const { return external_ids_; }
  std::optional<NodeId> find(std::string_view external_id) const;

  void check_node(NodeId u) const;  // throws ValidationError when out of range

 private:
  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::size_t> out_offsets_, in_offsets_, und_offsets_;
  std::vector<NodeId> out_targets_, in_targets_, und_targets_;
};

// One edge per line "follower followee"; `#`-prefixed comment lines;
// separator auto-detected (comma or whitespace). Node ids are assigned in
// first-appearance order.
DirectedGraph load_edge_list(std::istream& in, IngestReport* report = nullptr,
                             const std::string& source_name = "<edge list>");
DirectedGraph load_edge_list_file(const std::string& path, IngestReport* report = nullptr);

// External-id edge list, one "follower followee" per line, CSR order.
void write_edge_list(const DirectedGraph& g, std::ostream& out);

// Binary graph cache ("OLGR"), bit-exact round trip.
void save_graph_binary(const DirectedGraph& g, std::ostream& out);
void save_graph_binary(const DirectedGraph& g, const std::string& path);
DirectedGraph load_graph_binary(const std::string& path);

}  // namespace old
