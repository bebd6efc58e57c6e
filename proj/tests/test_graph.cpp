#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "ndl/errors.hpp"
#include "ndl/generators.hpp"
#include "ndl/graph.hpp"
#include "ndl/graph_io.hpp"

using namespace ndl;
using fixtures::set_of;

TEST_CASE("construction validates regularity and simplicity") {
  const std::vector<Edge> loop = {{0, 0}, {1, 2}};
  CHECK_THROWS_AS(RegularGraph::from_edges(3, 1, loop), RegularityError);
  const std::vector<Edge> multi = {{0, 1}, {0, 1}, {2, 3}, {2, 3}};
  CHECK_THROWS_AS(RegularGraph::from_edges(4, 2, multi), RegularityError);
  const std::vector<Edge> range = {{0, 4}};
  CHECK_THROWS_AS(RegularGraph::from_edges(2, 1, range), InputError);
  const std::vector<Edge> path = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
  CHECK_NOTHROW(RegularGraph::from_edges(4, 3, path));

  try {
    const std::vector<Edge> short_deg = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 2}};
    (void)RegularGraph::from_edges(4, 3, short_deg);
    FAIL("expected a regularity error");
  } catch (const RegularityError& e) {
    CHECK(e.vertex() < 4);
  }
}

TEST_CASE("canonical adjacency is sorted and symmetric") {
  const auto g = fixtures::petersen();
  CHECK(g.num_vertices() == 10);
  CHECK(g.degree() == 3);
  CHECK(g.num_edges() == 15);
  CHECK(g.adjacency().size() == 30);
  for (vertex_t v = 0; v < 10; ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (vertex_t u : nb) CHECK(g.has_edge(u, v));
    CHECK_FALSE(g.has_edge(v, v));
  }
  const auto e = g.edges();
  CHECK(e.size() == 15);
  CHECK(std::is_sorted(e.begin(), e.end()));
  for (auto [u, v] : e) CHECK(u < v);
}

TEST_CASE("VertexSet tracks its cardinality") {
  VertexSet s(130);
  CHECK(s.empty());
  s.insert(0);
  s.insert(129);
  s.insert(129);
  s.insert(64);
  CHECK(s.size() == 3);
  CHECK(s.contains(64));
  s.erase(64);
  s.erase(64);
  CHECK(s.size() == 2);
  CHECK(s.to_vector() == std::vector<vertex_t>{0, 129});
  CHECK(VertexSet::full(130).size() == 130);
  std::size_t seen = 0;
  VertexSet::full(130).for_each([&](vertex_t) { ++seen; });
  CHECK(seen == 130);
}

TEST_CASE("degree_into") {
  const auto k4 = fixtures::complete(4);
  CHECK(degree_into(k4, 0, set_of(4, {1, 2, 3})) == 3);
  CHECK(degree_into(k4, 2, VertexSet(4)) == 0);
  const auto q4 = generate(GenSpec::hypercube(4));
  CHECK(degree_into(q4, 0b0000, set_of(16, {0b0001, 0b0011})) == 1);
  CHECK_THROWS_AS(degree_into(k4, 4, VertexSet(4)), InputError);
}

TEST_CASE("edge_count_between counts ordered pairs") {
  const auto k4 = fixtures::complete(4);
  CHECK(edge_count_between(k4, set_of(4, {0, 1}), set_of(4, {2, 3})) == 4);
  const auto c6 = fixtures::cycle(6);
  CHECK(edge_count_between(c6, set_of(6, {0, 1, 2}), set_of(6, {0, 1, 2})) == 4);
  const auto g = generate(GenSpec::random_regular(500, 6, 3));
  const auto all = VertexSet::full(500);
  CHECK(edge_count_between(g, all, all) == 500 * 6);
  const auto b = set_of(500, {1, 5, 7, 100, 200, 300, 499});
  const auto c = set_of(500, {2, 5, 8, 150, 200, 301, 400});
  CHECK(edge_count_between(g, b, c) == edge_count_between(g, c, b));
}

TEST_CASE("external_neighborhood") {
  const auto k4 = fixtures::complete(4);
  CHECK(external_neighborhood(k4, set_of(4, {0})) == set_of(4, {1, 2, 3}));
  CHECK(external_neighborhood(k4, VertexSet::full(4)).empty());
  const auto c6 = fixtures::cycle(6);
  CHECK(external_neighborhood(c6, set_of(6, {0, 1})) == set_of(6, {2, 5}));

  const auto g = generate(GenSpec::random_regular(300, 5, 9));
  const std::vector<vertex_t> s = {3, 17, 42, 99, 250};
  const auto ns = external_neighborhood(g, VertexSet::from_list(300, s));
  for (vertex_t v : s) CHECK_FALSE(ns.contains(v));
  std::vector<std::uint8_t> scratch(300, 0);
  CHECK(external_neighborhood_size(g, s, scratch) == ns.size());
  CHECK(std::all_of(scratch.begin(), scratch.end(), [](auto x) { return x == 0; }));
}

TEST_CASE("graph file round trip") {
  const auto k4 = fixtures::complete(4);
  std::ostringstream out;
  write_graph(out, k4);
  CHECK(out.str() == "ndl-graph 1\n4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  std::istringstream in(out.str());
  const auto back = read_graph(in);
  CHECK(back == k4);
  CHECK(back.adjacency().size() == 12);

  const auto g = generate(GenSpec::random_regular(10000, 20, 5));
  std::ostringstream a;
  write_graph(a, g);
  std::istringstream ai(a.str());
  const auto g2 = read_graph(ai);
  CHECK(g2 == g);
  std::ostringstream b;
  write_graph(b, g2);
  CHECK(a.str() == b.str());
}

TEST_CASE("reader accepts any edge order and orientation") {
  std::istringstream in("ndl-graph 1\n4 3\n3 2\n1 0\n2 0\n0 3\n3 1\n2 1\n");
  CHECK(read_graph(in) == fixtures::complete(4));
}

namespace {
std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)read_graph(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}
}  // namespace

TEST_CASE("reader reports parse errors with line numbers") {
  CHECK(parse_error_line("ndl-graph 2\n4 3\n") == 1);
  CHECK(parse_error_line("ndl-graph 1\nfour three\n") == 2);
  CHECK(parse_error_line("ndl-graph 1\n4 3\n0 1\n0 2\n0 x\n") == 5);
  CHECK(parse_error_line("ndl-graph 1\n4 3\n0 1\n0 9\n") == 4);
  CHECK(parse_error_line("ndl-graph 1\n4 3\n0 1\r\n") == 3);
  CHECK(parse_error_line("ndl-graph 1\n4 3\n0 1\n0 2\n") > 0);
  CHECK(parse_error_line("ndl-graph 1\n3 3\n") == 2);
  CHECK(parse_error_line("ndl-graph 1\n5 3\n") == 2);
}

TEST_CASE("reader rejects a non-regular file") {
  std::istringstream in("ndl-graph 1\n4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n1 2\n");
  CHECK_THROWS_AS(read_graph(in), RegularityError);
}
