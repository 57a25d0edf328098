#pragma once

#include <string>
#include <vector>

#include "old/attributes.hpp"
#include "old/graph.hpp"

namespace old {

struct Snapshot {
  std::string label;
  DirectedGraph graph;
  AttributeTable attributes;  // empty-dim table when the manifest lists none
  bool has_attributes = false;
  IngestReport ingest;
  AttributeLoadReport attribute_report;
};

// Ordered time slices of one dynamic network. Snapshots keep their own dense
// node ids; external ids are the shared identity across slices and are
// tracked in one registry.
class SnapshotSeries {
 public:
  std::size_t size() const { return snapshots_.size(); }
  const Snapshot& at(std::size_t i) const { return snapshots_[i]; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }

  // registry id of an external id, shared across all snapshots
  std::uint32_t registry_id(const std::string& external_id) const;
  std::size_t registry_size() const { return registry_.size(); }

  void append(Snapshot snap);  // validates label uniqueness, extends registry

 private:
  std::vector<Snapshot> snapshots_;
  std::vector<std::string> registry_;
  std::unordered_map<std::string, std::uint32_t> registry_index_;
};

// Manifest: JSON file {"snapshots": [{"label": ..., "edges": ...,
// "attributes": ...?}, ...]}. Relative paths resolve against the manifest's
// directory. Entries keep their manifest order.
SnapshotSeries load_snapshots(const std::string& manifest_path);

}  // namespace old
