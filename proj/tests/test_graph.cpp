#include <algorithm>
#include <set>

#include "doctest.h"
#include "warm/error.hpp"
#include "warm/graph.hpp"

using namespace warm;

namespace {

std::set<std::pair<VertexId, VertexId>> edge_set(const Graph& g) {
  std::set<std::pair<VertexId, VertexId>> s;
  for (const Edge& e : g.edges()) s.insert(std::minmax(e.u, e.v));
  return s;
}

}  // namespace

TEST_CASE("cycle construction") {
  const Graph tri = build_cycle(3);
  CHECK(tri.edge_count() == 3);
  for (VertexId v = 0; v < 3; ++v) CHECK(tri.degree(v) == 2);

  const Graph sq = build_cycle(4);
  REQUIRE(sq.edge_count() == 4);
  CHECK(sq.edge(0).u == 0);
  CHECK(sq.edge(0).v == 1);
  CHECK(sq.edge(3).u == 3);
  CHECK(sq.edge(3).v == 0);

  const Graph big = build_cycle(100);
  CHECK(big.edge_count() == 100);
  CHECK(big.is_regular());
  CHECK(big.max_degree() == 2);

  CHECK_THROWS_AS(build_cycle(2), Error);
}

TEST_CASE("torus construction") {
  const Graph t1 = build_torus(1, 5);
  const Graph c5 = build_cycle(5);
  REQUIRE(t1.edge_count() == c5.edge_count());
  for (EdgeId e = 0; e < 5; ++e) {
    CHECK(t1.edge(e).u == c5.edge(e).u);
    CHECK(t1.edge(e).v == c5.edge(e).v);
  }

  const Graph t3 = build_torus(2, 3);
  CHECK(t3.vertex_count() == 9);
  CHECK(t3.edge_count() == 18);
  CHECK(t3.max_degree() == 4);
  CHECK(t3.is_regular());

  const Graph t20 = build_torus(2, 20);
  CHECK(t20.vertex_count() == 400);
  CHECK(t20.edge_count() == 800);

  CHECK_THROWS_AS(build_torus(2, 2), Error);
  CHECK_THROWS_AS(build_torus(0, 5), Error);
}

TEST_CASE("random regular graphs") {
  const Graph k4 = build_random_regular(4, 3, 1);
  CHECK(edge_set(k4) == std::set<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});

  const Graph g = build_random_regular(50, 4, 7);
  CHECK(g.edge_count() == 100);
  CHECK(g.is_regular());
  CHECK(g.max_degree() == 4);
  CHECK_NOTHROW(g.validate());

  CHECK_THROWS_AS(build_random_regular(5, 3, 1), Error);
  CHECK_THROWS_AS(build_random_regular(4, 4, 1), Error);

  // One attempt rarely yields a simple 4-regular pairing on 50 vertices.
  std::size_t capped = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    try {
      build_random_regular(50, 4, seed, 1);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::kResampleCap);
      ++capped;
    }
  }
  CHECK(capped > 0);
}

TEST_CASE("random regular graphs are reproducible from the seed") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const Graph a = build_random_regular(30, 3, seed);
    const Graph b = build_random_regular(30, 3, seed);
    REQUIRE(a.edge_count() == b.edge_count());
    for (EdgeId e = 0; e < a.edge_count(); ++e) {
      CHECK(a.edge(e).u == b.edge(e).u);
      CHECK(a.edge(e).v == b.edge(e).v);
    }
  }
}

TEST_CASE("edge list parsing") {
  const Graph one = build_from_edge_list("0 1");
  CHECK(one.edge_count() == 1);
  CHECK(one.max_degree() == 1);

  const Graph path = build_from_edge_list("0 1\n1 2\n");
  CHECK(path.edge_count() == 2);
  CHECK(path.degree(1) == 2);
  CHECK(path.max_degree() == 2);

  const Graph sparse = build_from_edge_list("# header\n10 20\n\n20 5\r\n");
  CHECK(sparse.vertex_count() == 3);
  CHECK(sparse.edge(0).u == 1);  // 5 -> 0, 10 -> 1, 20 -> 2
  CHECK(sparse.edge(0).v == 2);
  CHECK(sparse.edge(1).v == 0);

  CHECK_THROWS_AS(build_from_edge_list("0 0"), Error);
  CHECK_THROWS_AS(build_from_edge_list("0 1\n1 0"), Error);
  CHECK_THROWS_AS(build_from_edge_list(""), Error);

  try {
    build_from_edge_list("0 1\n1 x\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kParse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("edge neighborhoods") {
  const Graph c5 = build_cycle(5);
  CHECK(edge_neighborhood(c5, 0) == std::vector<EdgeId>{0, 1, 4});

  const Graph one = build_from_edge_list("0 1");
  CHECK(edge_neighborhood(one, 0) == std::vector<EdgeId>{0});

  const Graph t = build_torus(2, 5);
  for (EdgeId e = 0; e < t.edge_count(); ++e) CHECK(edge_neighborhood(t, e).size() == 7);

  CHECK_THROWS_AS(edge_neighborhood(c5, 5), Error);
}

TEST_CASE("edge neighborhood is symmetric") {
  const Graph g = build_random_regular(40, 5, 3);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    for (EdgeId f : edge_neighborhood(g, e)) {
      const auto back = edge_neighborhood(g, f);
      CHECK(std::binary_search(back.begin(), back.end(), e));
    }
}

TEST_CASE("builders satisfy the graph invariants") {
  const std::vector<Graph> regular = {build_cycle(7), build_torus(2, 4), build_torus(3, 3),
                                      build_random_regular(20, 3, 11), build_random_regular(12, 6, 5)};
  for (const Graph& g : regular) {
    CHECK_NOTHROW(g.validate());
    CHECK(g.is_regular());
    CHECK(2 * g.edge_count() == g.max_degree() * g.vertex_count());
  }
  for (const Graph& g : {build_star(3), build_path(4), build_from_edge_list("0 1\n1 2\n2 0\n2 3")}) {
    CHECK_NOTHROW(g.validate());
    CHECK_FALSE(g.is_regular());
  }
}
