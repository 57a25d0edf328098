#include "old/embedding.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "old/errors.hpp"
#include "old/text.hpp"

namespace old {

bool EmbeddingMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void write_embedding_csv(const EmbeddingMatrix& m, const DirectedGraph& g, std::ostream& out) {
  if (m.node_count() != g.node_count()) {
    throw ValidationError("embedding rows do not match graph node count");
  }
  out << "id";
  for (std::size_t d = 0; d < m.dim(); ++d) out << ",v" << d;
  out << '\n';
  for (NodeId i = 0; i < m.node_count(); ++i) {
    out << g.external_id(i);
    for (double v : m.row(i)) out << ',' << format_double(v);
    out << '\n';
  }
}

EmbeddingMatrix read_embedding_csv(std::istream& in, const DirectedGraph& g,
                                   const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name + ": missing header");
  auto header = split(trim(line), ',');
  if (header.size() < 2) throw ParseError(source_name + ": header needs id plus dims");
  std::size_t dim = header.size() - 1;

  EmbeddingMatrix m(g.node_count(), dim);
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    std::string where = source_name + " line " + std::to_string(line_no);
    auto fields = split(body, ',');
    if (fields.size() != dim + 1) {
      throw ParseError(where + ": expected " + std::to_string(dim + 1) + " fields");
    }
    auto node = g.find(fields[0]);
    if (!node) throw ParseError(where + ": unknown id '" + std::string(fields[0]) + "'");
    if (seen[*node]) throw ParseError(where + ": duplicate row for '" + std::string(fields[0]) + "'");
    seen[*node] = 1;
    auto row = m.row(*node);
    for (std::size_t d = 0; d < dim; ++d) row[d] = parse_double(fields[d + 1], where);
  }
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (!seen[i]) {
      throw ValidationError(source_name + ": no row for node '" + g.external_id(i) + "'");
    }
  }
  return m;
}

namespace {
constexpr char kEmbMagic[4] = {'O', 'L', 'E', 'M'};
constexpr std::uint32_t kEmbVersion = 1;
}  // namespace

void write_embedding_binary(const EmbeddingMatrix& m, std::ostream& out) {
  out.write(kEmbMagic, 4);
  std::uint32_t version = kEmbVersion;
  std::uint64_t nodes = m.node_count();
  std::uint32_t dim = static_cast<std::uint32_t>(m.dim());
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&nodes), sizeof(nodes));
  out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
  out.write(reinterpret_cast<const char*>(m.data().data()),
            static_cast<std::streamsize>(m.data().size() * sizeof(double)));
}

void write_embedding_binary(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write embedding: " + path);
  write_embedding_binary(m, out);
  if (!out) throw IoError("write failed: " + path);
}

EmbeddingMatrix read_embedding_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kEmbMagic, 4) != 0) {
    throw ParseError("not an embedding file (bad magic): " + path);
  }
  std::uint32_t version = 0, dim = 0;
  std::uint64_t nodes = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&nodes), sizeof(nodes));
  in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
  if (!in) throw IoError("truncated embedding file: " + path);
  if (version != kEmbVersion) {
    throw ParseError("unsupported embedding version " + std::to_string(version) + ": " + path);
  }
  EmbeddingMatrix m(nodes, dim);
  in.read(reinterpret_cast<char*>(m.data().data()),
          static_cast<std::streamsize>(m.data().size() * sizeof(double)));
  if (!in) throw IoError("truncated embedding file: " + path);
  return m;
}

}  // namespace old
