#include "old/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "old/errors.hpp"
#include "old/text.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary cache formats assume a little-endian host");

namespace old {

namespace {

// CSR from (source, target) pairs; targets sorted per row.
void build_csr(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
               bool reverse, std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : edges) offsets[(reverse ? v : u) + 1]++;
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    NodeId src = reverse ? v : u;
    NodeId dst = reverse ? u : v;
    targets[cursor[src]++] = dst;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(targets.begin() + offsets[i], targets.begin() + offsets[i + 1]);
  }
}

}  // namespace

DirectedGraph DirectedGraph::from_edges(std::vector<std::pair<NodeId, NodeId>> edges,
                                        std::vector<std::string> external_ids,
                                        IngestReport* report) {
  DirectedGraph g;
  g.external_ids_ = std::move(external_ids);
  const std::size_t n = g.external_ids_.size();
  g.index_.reserve(n);
  for (NodeId i = 0; i < n; ++i) {
    auto [it, inserted] = g.index_.emplace(g.external_ids_[i], i);
    if (!inserted) throw ValidationError("duplicate external id: " + g.external_ids_[i]);
  }

  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ValidationError("edge endpoint out of range");
  }

  std::size_t self_loops = 0;
  std::erase_if(edges, [&](const auto& e) {
    if (e.first == e.second) {
      ++self_loops;
      return true;
    }
    return false;
  });
  std::sort(edges.begin(), edges.end());
  std::size_t before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (report) {
    report->self_loops_dropped += self_loops;
    report->duplicate_edges_dropped += before - edges.size();
    report->edges_kept = edges.size();
  }

  build_csr(n, edges, false, g.out_offsets_, g.out_targets_);
  build_csr(n, edges, true, g.in_offsets_, g.in_targets_);

  // undirected projection: merged, deduplicated neighbor union
  g.und_offsets_.assign(n + 1, 0);
  std::vector<NodeId> merged;
  for (NodeId i = 0; i < n; ++i) {
    auto out = g.out_neighbors(i);
    auto in = g.in_neighbors(i);
    merged.clear();
    merged.reserve(out.size() + in.size());
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(merged));
    g.und_offsets_[i + 1] = g.und_offsets_[i] + merged.size();
    g.und_targets_.insert(g.und_targets_.end(), merged.begin(), merged.end());
  }
  return g;
}

std::span<const NodeId> DirectedGraph::out_neighbors(NodeId u) const {
  return {out_targets_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
}

std::span<const NodeId> DirectedGraph::in_neighbors(NodeId u) const {
  return {in_targets_.data() + in_offsets_[u], in_offsets_[u + 1] - in_offsets_[u]};
}

std::span<const NodeId> DirectedGraph::undirected_neighbors(NodeId u) const {
  return {und_targets_.data() + und_offsets_[u], und_offsets_[u + 1] - und_offsets_[u]};
}

std::size_t DirectedGraph::out_degree(NodeId u) const {
  return out_offsets_[u + 1] - out_offsets_[u];
}

std::size_t DirectedGraph::in_degree(NodeId u) const {
  return in_offsets_[u + 1] - in_offsets_[u];
}

std::size_t DirectedGraph::undirected_degree(NodeId u) const {
  return und_offsets_[u + 1] - und_offsets_[u];
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
  auto nb = out_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

bool DirectedGraph::has_undirected_edge(NodeId u, NodeId v) const {
  auto nb = undirected_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> DirectedGraph::find(std::string_view external_id) const {
  auto it = index_.find(std::string(external_id));
  return it == index_.end() ? std::nullopt : std::optional<NodeId>(it->second);
}

void DirectedGraph::check_node(NodeId u) const {
  if (u >= node_count()) {
    throw ValidationError("node id " + std::to_string(u) + " out of range (node count " +
                          std::to_string(node_count()) + ")");
  }
}

DirectedGraph load_edge_list(std::istream& in, IngestReport* report,
                             const std::string& source_name) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](std::string_view token) -> NodeId {
    auto it = index.find(std::string(token));
    if (it != index.end()) return it->second;
    NodeId id = static_cast<NodeId>(ids.size());
    ids.emplace_back(token);
    index.emplace(ids.back(), id);
    return id;
  };

  std::string line;
  std::size_t line_no = 0;
  std::size_t lines_read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    ++lines_read;
    std::string where = source_name + " line " + std::to_string(line_no);

    std::vector<std::string_view> tokens;
    if (body.find(',') != std::string_view::npos) {
      tokens = split(body, ',');
    } else {
      tokens = split_ws(body);
    }
    if (tokens.size() != 2) {
      throw ParseError(where + ": expected 2 tokens, got " + std::to_string(tokens.size()));
    }
    if (tokens[0].empty() || tokens[1].empty()) {
      throw ParseError(where + ": empty id token");
    }
    NodeId follower = intern(tokens[0]);
    NodeId followee = intern(tokens[1]);
    edges.emplace_back(follower, followee);
  }
  if (report) report->lines_read = lines_read;
  return DirectedGraph::from_edges(std::move(edges), std::move(ids), report);
}

DirectedGraph load_edge_list_file(const std::string& path, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  return load_edge_list(in, report, path);
}

void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      out << g.external_id(u) << ' ' << g.external_id(v) << '\n';
    }
  }
}

namespace {

constexpr char kGraphMagic[4] = {'O', 'L', 'G', 'R'};
constexpr std::uint32_t kGraphVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("truncated graph cache: " + path);
  return v;
}

}  // namespace

void save_graph_binary(const DirectedGraph& g, std::ostream& out) {
  out.write(kGraphMagic, 4);
  put(out, kGraphVersion);
  put(out, static_cast<std::uint64_t>(g.node_count()));
  put(out, static_cast<std::uint64_t>(g.edge_count()));
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::string& id = g.external_id(u);
    put(out, static_cast<std::uint32_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
  }
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      put(out, u);
      put(out, v);
    }
  }
}

void save_graph_binary(const DirectedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graph cache: " + path);
  save_graph_binary(g, out);
  if (!out) throw IoError("write failed: " + path);
}

DirectedGraph load_graph_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph cache: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kGraphMagic, 4) != 0) {
    throw ParseError("not a graph cache (bad magic): " + path);
  }
  auto version = get<std::uint32_t>(in, path);
  if (version != kGraphVersion) {
    throw ParseError("unsupported graph cache version " + std::to_string(version) + ": " + path);
  }
  auto n = get<std::uint64_t>(in, path);
  auto m = get<std::uint64_t>(in, path);
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto len = get<std::uint32_t>(in, path);
    std::string id(len, '\0');
    in.read(id.data(), len);
    if (!in) throw IoError("truncated graph cache: " + path);
    ids.push_back(std::move(id));
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    auto u = get<NodeId>(in, path);
    auto v = get<NodeId>(in, path);
    edges.emplace_back(u, v);
  }
  return DirectedGraph::from_edges(std::move(edges), std::move(ids));
}

}  // namespace old
