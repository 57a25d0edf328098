#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "old/graph.hpp"
#include "old/rng.hpp"

namespace testutil {

// Graph over nodes "0".."n-1" from explicit directed pairs.
inline old::DirectedGraph graph_from_pairs(
    std::size_t n, std::vector<std::pair<old::NodeId, old::NodeId>> pairs,
    old::IngestReport* report = nullptr) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return old::DirectedGraph::from_edges(std::move(pairs), std::move(ids), report);
}

// Erdos-Renyi style directed graph: every ordered pair (u, v), u != v,
// becomes an edge with probability p.
inline std::vector<std::pair<old::NodeId, old::NodeId>> random_edge_pairs(std::uint64_t seed,
                                                                          std::size_t n,
                                                                          double p) {
  old::Rng rng(seed);
  std::vector<std::pair<old::NodeId, old::NodeId>> pairs;
  for (old::NodeId u = 0; u < n; ++u) {
    for (old::NodeId v = 0; v < n; ++v) {
      if (u != v && rng.next_double() < p) pairs.emplace_back(u, v);
    }
  }
  return pairs;
}

inline old::DirectedGraph random_graph(std::uint64_t seed, std::size_t n, double p) {
  return graph_from_pairs(n, random_edge_pairs(seed, n, p));
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    old::Rng rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("old_test_" + tag + "_" + std::to_string(rng.next_u64()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace testutil
