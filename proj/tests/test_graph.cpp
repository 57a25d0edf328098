#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "old/errors.hpp"
#include "old/graph.hpp"

using namespace old;

TEST_CASE("empty stream gives the empty graph") {
  std::istringstream in("");
  DirectedGraph g = load_edge_list(in);
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("two-line edge list builds expected adjacency") {
  std::istringstream in("a b\nb c\n");
  DirectedGraph g = load_edge_list(in);
  REQUIRE(g.node_count() == 3);
  CHECK(g.edge_count() == 2);

  // first-appearance ids: a=0, b=1, c=2
  CHECK(g.external_id(0) == "a");
  CHECK(g.external_id(1) == "b");
  CHECK(g.external_id(2) == "c");

  auto out_a = g.out_neighbors(0);
  REQUIRE(out_a.size() == 1);
  CHECK(out_a[0] == 1);  // followees of a = {b}
  auto in_b = g.in_neighbors(1);
  REQUIRE(in_b.size() == 1);
  CHECK(in_b[0] == 0);  // followers of b = {a}
  CHECK(g.out_degree(0) == 1);
  CHECK(g.in_degree(1) == 1);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
}

TEST_CASE("comma separator, comments and blank lines") {
  std::istringstream in("# comment\n\nu1,u2\nu2 , u3\n");
  IngestReport report;
  DirectedGraph g = load_edge_list(in, &report);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(report.lines_read == 2);
  CHECK(g.find("u3").has_value());
}

TEST_CASE("duplicate edges and self-loops are dropped and counted") {
  std::istringstream in("a b\na b\na a\nb a\n");
  IngestReport report;
  DirectedGraph g = load_edge_list(in, &report);
  CHECK(g.edge_count() == 2);  // a->b and b->a
  CHECK(report.duplicate_edges_dropped == 1);
  CHECK(report.self_loops_dropped == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
}

TEST_CASE("malformed lines raise parse errors with the line number") {
  {
    std::istringstream in("a b\nc\n");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("line 2"), ParseError);
  }
  {
    std::istringstream in("a b c\n");
    CHECK_THROWS_AS(load_edge_list(in), ParseError);
  }
  {
    std::istringstream in(",b\n");
    CHECK_THROWS_WITH_AS(load_edge_list(in), doctest::Contains("empty id"), ParseError);
  }
}

TEST_CASE("node id out of range is rejected") {
  DirectedGraph g = testutil::graph_from_pairs(2, {{0, 1}});
  CHECK_THROWS_AS(g.check_node(2), ValidationError);
}

TEST_CASE("undirected projection merges both directions without duplicates") {
  // a<->b plus a->c: und(a) = {b, c}, und_degree counts distinct neighbors
  DirectedGraph g = testutil::graph_from_pairs(3, {{0, 1}, {1, 0}, {0, 2}});
  auto und = g.undirected_neighbors(0);
  REQUIRE(und.size() == 2);
  CHECK(und[0] == 1);
  CHECK(und[1] == 2);
  CHECK(g.undirected_degree(1) == 1);
  CHECK(g.has_undirected_edge(2, 0));
}

TEST_CASE("export/ingest round trip reproduces the edge set") {
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    DirectedGraph g = testutil::random_graph(seed, 40, 0.07);
    std::ostringstream dump;
    write_edge_list(g, dump);
    std::istringstream in(dump.str());
    DirectedGraph h = load_edge_list(in);

    auto edge_set = [](const DirectedGraph& gr) {
      std::set<std::pair<std::string, std::string>> edges;
      for (NodeId u = 0; u < gr.node_count(); ++u) {
        for (NodeId v : gr.out_neighbors(u)) {
          edges.insert({gr.external_id(u), gr.external_id(v)});
        }
      }
      return edges;
    };
    CHECK(edge_set(g) == edge_set(h));
  }
}

TEST_CASE("binary cache round trips bit-exactly") {
  testutil::TempDir tmp("graph_cache");
  DirectedGraph g = testutil::random_graph(7, 30, 0.1);
  std::string path = tmp.file("g.olgr");
  save_graph_binary(g, path);
  DirectedGraph h = load_graph_binary(path);

  REQUIRE(h.node_count() == g.node_count());
  REQUIRE(h.edge_count() == g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    CHECK(h.external_id(u) == g.external_id(u));
    auto a = g.out_neighbors(u);
    auto b = h.out_neighbors(u);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }

  // second save produces identical bytes
  std::string path2 = tmp.file("g2.olgr");
  save_graph_binary(h, path2);
  CHECK(testutil::read_file(path) == testutil::read_file(path2));
}

TEST_CASE("corrupt cache is rejected") {
  testutil::TempDir tmp("graph_bad");
  testutil::write_file(tmp.file("bad.olgr"), "NOPE....");
  CHECK_THROWS_AS(load_graph_binary(tmp.file("bad.olgr")), ParseError);
  CHECK_THROWS_AS(load_graph_binary(tmp.file("absent.olgr")), IoError);
}
