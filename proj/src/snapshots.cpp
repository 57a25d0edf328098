#include "old/snapshots.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "old/errors.hpp"

namespace old {

std::uint32_t SnapshotSeries::registry_id(const std::string& external_id) const {
  auto it = registry_index_.find(external_id);
  if (it == registry_index_.end()) {
    throw ValidationError("external id not in snapshot registry: " + external_id);
  }
  return it->second;
}

void SnapshotSeries::append(Snapshot snap) {
  for (const auto& existing : snapshots_) {
    if (existing.label == snap.label) {
      throw ValidationError("duplicate snapshot label: " + snap.label);
    }
  }
  const auto& g = snap.graph;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::string& ext = g.external_id(i);
    auto [it, inserted] = registry_index_.emplace(ext, static_cast<std::uint32_t>(registry_.size()));
    if (inserted) registry_.push_back(ext);
  }
  snapshots_.push_back(std::move(snap));
}

SnapshotSeries load_snapshots(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open snapshot manifest: " + manifest_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("snapshot manifest " + manifest_path + ": " + e.what());
  }
  if (!doc.contains("snapshots") || !doc["snapshots"].is_array()) {
    throw ParseError("snapshot manifest " + manifest_path + ": missing 'snapshots' array");
  }
  std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  SnapshotSeries series;
  for (const auto& entry : doc["snapshots"]) {
    if (!entry.contains("label") || !entry.contains("edges")) {
      throw ParseError("snapshot manifest " + manifest_path +
                       ": each entry needs 'label' and 'edges'");
    }
    Snapshot snap;
    snap.label = entry["label"].get<std::string>();
    std::string edge_path = resolve(entry["edges"].get<std::string>());
    try {
      snap.graph = load_edge_list_file(edge_path, &snap.ingest);
    } catch (const IoError& e) {
      throw IoError("snapshot '" + snap.label + "': " + e.what());
    }
    if (entry.contains("attributes")) {
      std::string attr_path = resolve(entry["attributes"].get<std::string>());
      try {
        snap.attributes = load_attributes_file(attr_path, snap.graph, &snap.attribute_report);
      } catch (const IoError& e) {
        throw IoError("snapshot '" + snap.label + "': " + e.what());
      }
      snap.has_attributes = true;
    } else {
      snap.attributes = AttributeTable(snap.graph.node_count(), 0);
    }
    series.append(std::move(snap));
  }
  return series;
}

}  // namespace old
