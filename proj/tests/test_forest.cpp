#include "domgame/forest.hpp"

#include <stdexcept>

#include "doctest.h"
#include "domgame/tree_enum.hpp"
#include "helpers.hpp"

using namespace domgame;
using namespace domgame::test;

TEST_CASE("closed neighborhood") {
  Forest p3 = path_graph(3);
  CHECK(closed_neighborhood(p3, bit(2)) == (bit(0) | bit(2) | bit(4)));
  CHECK(closed_neighborhood(p3, 0) == 0);
  Forest s3 = star_graph(3);
  CHECK(closed_neighborhood(s3, bit(2)) == (bit(2) | bit(0)));
  CHECK_THROWS_AS(closed_neighborhood(p3, bit(10)), std::invalid_argument);
}

TEST_CASE("components") {
  Forest two_edges = from_edges(4, {{0, 1}, {2, 3}});
  auto comps = components(two_edges);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == (bit(0) | bit(2)));
  CHECK(comps[1] == (bit(4) | bit(6)));

  CHECK(components(path_graph(5)).size() == 1);
  CHECK(components(Forest{}).empty());
}

TEST_CASE("components form a partition") {
  for (const CanonicalTree& t : trees(9)) {
    Forest g = t.decode();
    VertexMask seen = 0;
    for (VertexMask c : components(g)) {
      CHECK((seen & c) == 0);
      seen |= c;
    }
    CHECK(seen == g.vertices());
  }
}

TEST_CASE("tails") {
  Forest spider = spider_graph(3, 2);
  auto tails = tails_of(spider, 0);
  REQUIRE(tails.size() == 3);
  for (const Tail& t : tails) {
    CHECK(t.length() == 2);
    CHECK(t.kind == TailKind::kTail);
  }

  // Tails of a fixed anchor are vertex-disjoint.
  VertexMask seen = 0;
  for (const Tail& t : tails)
    for (int v : t.path) {
      CHECK((seen & bit(v)) == 0);
      seen |= bit(v);
    }

  Forest p5 = path_graph(5);
  CHECK(tails_of(p5, 4).empty());  // internal path vertex

  Forest k13 = star_graph(3);
  auto star_tails = tails_of(k13, 0);
  REQUIRE(star_tails.size() == 3);
  for (const Tail& t : star_tails) CHECK(t.length() == 1);
}

TEST_CASE("split vertices") {
  CHECK(split_vertices(path_graph(6)) == 0);
  CHECK(split_vertices(star_graph(3)) == bit(0));

  // Every tree with a vertex of degree >= 3 has a split vertex.
  for (int n = 4; n <= 12; ++n) {
    for (const CanonicalTree& t : trees(n)) {
      Forest g = t.decode();
      bool has_deg3 = false;
      for (int v : bits(g.vertices()))
        if (g.degree(v) >= 3) has_deg3 = true;
      if (has_deg3) CHECK(split_vertices(g) != 0);
    }
  }
}

TEST_CASE("component classification") {
  Forest p2 = path_graph(2);
  CHECK(classify_component(p2, p2.vertices()) == ComponentKind::kPath);

  Forest k13 = star_graph(3);
  CHECK(classify_component(k13, k13.vertices()) == ComponentKind::kComplex);

  // Degree-4 vertex in a 9-vertex tree, cross-checked by brute force.
  Forest g = from_edges(9, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}});
  int max_deg = 0;
  for (int v : bits(g.vertices())) max_deg = std::max(max_deg, g.degree(v));
  REQUIRE(max_deg == 4);
  CHECK(classify_component(g, g.vertices()) == ComponentKind::kComplex);

  Forest two = from_edges(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(classify_component(two, two.vertices()), std::invalid_argument);
  CHECK_THROWS_AS(classify_component(two, bit(0)), std::invalid_argument);
}

TEST_CASE("forest structural guards") {
  Forest g;
  g.add_vertex(0);
  g.add_vertex(2);
  g.add_edge(0, 2);
  CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
  CHECK(g.is_acyclic());
  CHECK(g.is_isolate_free());
  g.add_vertex(4);
  CHECK(!g.is_isolate_free());
}

TEST_CASE("distance") {
  Forest p5 = path_graph(5);
  CHECK(distance(p5, 0, 8) == 4);
  CHECK(distance(p5, 0, 0) == 0);
  Forest two = from_edges(4, {{0, 1}, {2, 3}});
  CHECK(distance(two, 0, 4) == -1);
}
