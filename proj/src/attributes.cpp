#include "old/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>

#include "old/errors.hpp"
#include "old/text.hpp"

namespace old {

AttributeTable::AttributeTable(std::size_t node_count, std::size_t dim)
    : node_count_(node_count), dim_(dim), values_(node_count * dim, 0.0) {}

std::array<double, 3> AttributeTable::attitude(NodeId i) const {
  if (!has_attitude(i)) {
    throw ValidationError("node " + std::to_string(i) + " has no attitude triple");
  }
  return attitudes_[i];
}

void AttributeTable::set_attitude(NodeId i, std::array<double, 3> triple) {
  for (double v : triple) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("attitude component out of [0,1] for node " + std::to_string(i));
    }
  }
  if (attitudes_.empty()) {
    attitudes_.assign(node_count_, {0.0, 0.0, 0.0});
    has_attitude_.assign(node_count_, 0);
  }
  attitudes_[i] = triple;
  has_attitude_[i] = 1;
}

AttributeTable load_attributes(std::istream& in, const DirectedGraph& graph,
                               AttributeLoadReport* report, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source_name + ": missing header row");
  auto header = split(trim(line), ',');
  if (header.size() < 2) throw ParseError(source_name + ": header needs id column plus data");

  // attitude columns are recognized by name; everything else is a dimension
  int support_col = -1, reject_col = -1, irrelevant_col = -1;
  std::vector<std::size_t> attr_cols;
  std::vector<std::string> attr_names;
  for (std::size_t c = 1; c < header.size(); ++c) {
    std::string name = to_lower(header[c]);
    if (name == "support") {
      support_col = static_cast<int>(c);
    } else if (name == "reject") {
      reject_col = static_cast<int>(c);
    } else if (name == "irrelevant") {
      irrelevant_col = static_cast<int>(c);
    } else {
      attr_cols.push_back(c);
      attr_names.emplace_back(header[c]);
    }
  }
  int attitude_cols = (support_col >= 0) + (reject_col >= 0) + (irrelevant_col >= 0);
  if (attitude_cols != 0 && attitude_cols != 3) {
    throw ValidationError(source_name +
                          ": attitude columns must be all of support/reject/irrelevant or none");
  }

  AttributeTable table(graph.node_count(), attr_cols.size());
  table.set_columns(attr_names);
  std::vector<std::uint8_t> seen(graph.node_count(), 0);
  AttributeLoadReport local;
  AttributeLoadReport& rep = report ? *report : local;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::string where = source_name + " line " + std::to_string(line_no);
    auto fields = split(body, ',');
    if (fields.size() != header.size()) {
      throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    auto node = graph.find(fields[0]);
    if (!node) {
      ++rep.unknown_ids_skipped;
      continue;
    }
    if (seen[*node]) throw ParseError(where + ": duplicate row for id '" + std::string(fields[0]) + "'");
    seen[*node] = 1;
    ++rep.rows_matched;

    auto out = table.row(*node);
    for (std::size_t k = 0; k < attr_cols.size(); ++k) {
      double v = parse_double(fields[attr_cols[k]], where);
      if (!std::isfinite(v)) throw ParseError(where + ": non-finite value");
      out[k] = v;
    }
    if (attitude_cols == 3) {
      std::array<double, 3> triple = {parse_double(fields[support_col], where),
                                      parse_double(fields[reject_col], where),
                                      parse_double(fields[irrelevant_col], where)};
      table.set_attitude(*node, triple);
    }
  }

  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (!seen[i]) rep.nodes_missing.push_back(i);
  }
  return table;
}

AttributeTable load_attributes_file(const std::string& path, const DirectedGraph& graph,
                                    AttributeLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open attribute file: " + path);
  return load_attributes(in, graph, report, path);
}

namespace {

constexpr char kAttrMagic[4] = {'O', 'L', 'A', 'T'};
constexpr std::uint32_t kAttrVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("truncated attribute cache: " + path);
  return v;
}

}  // namespace

void save_attributes_binary(const AttributeTable& t, std::ostream& out) {
  out.write(kAttrMagic, 4);
  put(out, kAttrVersion);
  put(out, static_cast<std::uint64_t>(t.node_count()));
  put(out, static_cast<std::uint32_t>(t.dim()));
  put(out, static_cast<std::uint32_t>(t.columns().size()));
  for (const auto& name : t.columns()) {
    put(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  for (NodeId i = 0; i < t.node_count(); ++i) {
    auto r = t.row(i);
    out.write(reinterpret_cast<const char*>(r.data()),
              static_cast<std::streamsize>(r.size() * sizeof(double)));
  }
  put(out, static_cast<std::uint8_t>(t.any_attitudes() ? 1 : 0));
  if (t.any_attitudes()) {
    for (NodeId i = 0; i < t.node_count(); ++i) {
      put(out, static_cast<std::uint8_t>(t.has_attitude(i) ? 1 : 0));
      if (t.has_attitude(i)) {
        auto a = t.attitude(i);
        out.write(reinterpret_cast<const char*>(a.data()), sizeof(a));
      }
    }
  }
}

void save_attributes_binary(const AttributeTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write attribute cache: " + path);
  save_attributes_binary(t, out);
  if (!out) throw IoError("write failed: " + path);
}

AttributeTable load_attributes_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open attribute cache: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kAttrMagic, 4) != 0) {
    throw ParseError("not an attribute cache (bad magic): " + path);
  }
  auto version = get<std::uint32_t>(in, path);
  if (version != kAttrVersion) {
    throw ParseError("unsupported attribute cache version: " + path);
  }
  auto n = get<std::uint64_t>(in, path);
  auto dim = get<std::uint32_t>(in, path);
  auto ncols = get<std::uint32_t>(in, path);
  std::vector<std::string> names;
  for (std::uint32_t c = 0; c < ncols; ++c) {
    auto len = get<std::uint32_t>(in, path);
    std::string name(len, '\0');
    in.read(name.data(), len);
    names.push_back(std::move(name));
  }
  AttributeTable t(n, dim);
  t.set_columns(std::move(names));
  for (std::uint64_t i = 0; i < n; ++i) {
    auto r = t.row(static_cast<NodeId>(i));
    in.read(reinterpret_cast<char*>(r.data()), static_cast<std::streamsize>(dim * sizeof(double)));
  }
  auto any = get<std::uint8_t>(in, path);
  if (any) {
    for (std::uint64_t i = 0; i < n; ++i) {
      auto has = get<std::uint8_t>(in, path);
      if (has) {
        std::array<double, 3> a;
        in.read(reinterpret_cast<char*>(a.data()), sizeof(a));
        if (!in) throw IoError("truncated attribute cache: " + path);
        t.set_attitude(static_cast<NodeId>(i), a);
      }
    }
  }
  if (!in) throw IoError("truncated attribute cache: " + path);
  return t;
}

}  // namespace old
