#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "perc/errors.hpp"
#include "perc/graph.hpp"
#include "perc/serialize.hpp"

using perc::Graph;

namespace {

std::vector<std::uint32_t> sorted_degrees(const Graph& g) {
  std::vector<std::uint32_t> d(g.n_vertices());
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("cycle basics") {
  const Graph c3 = Graph::cycle(3);
  CHECK(c3.n_vertices() == 3);
  CHECK(c3.n_edges() == 3);
  CHECK(c3.min_degree() == 2);
  CHECK(c3.max_degree() == 2);
  CHECK(c3.transitive());
  REQUIRE(c3.edge_orbits().has_value());
  CHECK(c3.edge_orbits()->size() == 1);
  c3.check_invariants();

  CHECK(perc::diameter(Graph::cycle(4)).lower == 2);
  CHECK(perc::diameter(Graph::cycle(10)).lower == 5);

  const Graph c10 = Graph::cycle(10);
  CHECK(c10.edge_orbits()->at(0).size() == 10);

  CHECK_THROWS_AS(Graph::cycle(2), perc::invalid_parameter);
}

TEST_CASE("torus basics") {
  const Graph t = Graph::torus({4, 4});
  CHECK(t.n_vertices() == 16);
  CHECK(t.n_edges() == 32);
  CHECK(t.min_degree() == 4);
  CHECK(t.transitive());
  REQUIRE(t.edge_orbits().has_value());
  CHECK(t.edge_orbits()->size() == 2);
  CHECK(t.edge_orbits()->at(0).size() == 16);
  CHECK(t.edge_orbits()->at(1).size() == 16);
  t.check_invariants();
  CHECK(perc::diameter(t).lower == 4);

  const Graph t3 = Graph::torus({3});
  CHECK(t3.n_vertices() == 3);
  CHECK(t3.n_edges() == 3);

  // Length-2 factors contribute one edge per pair, keeping the graph simple.
  const Graph t2 = Graph::torus({2, 4});
  CHECK(t2.n_vertices() == 8);
  t2.check_invariants();

  CHECK_THROWS_AS(Graph::torus({1, 4}), perc::invalid_parameter);
}

TEST_CASE("hypercube basics") {
  const Graph h3 = Graph::hypercube(3);
  CHECK(h3.n_vertices() == 8);
  CHECK(h3.n_edges() == 12);
  CHECK(perc::diameter(h3).lower == 3);
  h3.check_invariants();

  const Graph h10 = Graph::hypercube(10);
  CHECK(h10.n_vertices() == 1024);
  CHECK(h10.n_edges() == 5120);

  CHECK_THROWS_AS(Graph::hypercube(0), perc::invalid_parameter);
}

TEST_CASE("complete basics") {
  CHECK(Graph::complete(2).n_edges() == 1);
  CHECK(Graph::complete(4).n_edges() == 6);
  const Graph k100 = Graph::complete(100);
  CHECK(k100.n_edges() == 4950);
  CHECK(k100.min_degree() == 99);
  CHECK(perc::diameter(Graph::complete(6)).lower == 1);
  k100.check_invariants();
}

TEST_CASE("cartesian product counts and commutativity") {
  const Graph prism = Graph::cartesian_product(Graph::complete(3), Graph::complete(2));
  CHECK(prism.n_vertices() == 6);
  CHECK(prism.n_edges() == 9);
  prism.check_invariants();

  const Graph p1 = Graph::cartesian_product(Graph::cycle(4), Graph::cycle(4));
  const Graph t = Graph::torus({4, 4});
  CHECK(p1.n_vertices() == t.n_vertices());
  CHECK(p1.n_edges() == t.n_edges());
  CHECK(sorted_degrees(p1) == sorted_degrees(t));
  CHECK(perc::diameter(p1).lower == perc::diameter(t).lower);

  const Graph ab = Graph::cartesian_product(Graph::complete(3), Graph::cycle(4));
  const Graph ba = Graph::cartesian_product(Graph::cycle(4), Graph::complete(3));
  CHECK(ab.n_vertices() == ba.n_vertices());
  CHECK(ab.n_edges() == ba.n_edges());
  CHECK(sorted_degrees(ab) == sorted_degrees(ba));
  CHECK(perc::diameter(ab).lower == perc::diameter(ba).lower);

  const Graph box = Graph::cartesian_product(Graph::complete(20), Graph::complete(2));
  REQUIRE(box.edge_orbits().has_value());
  CHECK(box.edge_orbits()->back().size() == 20);  // one bridge per K_20 vertex
  box.check_invariants();
}

TEST_CASE("abelian cayley graphs") {
  const Graph c = perc::Graph::abelian_cayley({7}, {{1}});
  CHECK(c.n_vertices() == 7);
  CHECK(c.n_edges() == 7);
  CHECK(c.min_degree() == 2);

  const Graph circ = perc::Graph::abelian_cayley({5}, {{1}, {2}});
  CHECK(circ.n_edges() == 10);
  CHECK(circ.min_degree() == 4);
  circ.check_invariants();

  const Graph t = perc::Graph::abelian_cayley({4, 4}, {{1, 0}, {0, 1}});
  CHECK(t.n_vertices() == 16);
  CHECK(t.n_edges() == 32);
  CHECK(sorted_degrees(t) == sorted_degrees(Graph::torus({4, 4})));

  CHECK_THROWS_AS(perc::Graph::abelian_cayley({4}, {{0}}), perc::invalid_parameter);
}

TEST_CASE("molecular chain construction") {
  const Graph g = Graph::molecular_chain(8, 0.3);
  CHECK(g.n_vertices() == 48);  // 16 + 8 + 8 + 16
  CHECK(g.is_connected());
  CHECK_FALSE(g.transitive());
  CHECK_FALSE(g.edge_orbits().has_value());
  g.check_invariants();

  // Each vertex of a block connects to ceil(8^0.3) = 2 vertices of each
  // adjacent block; between the two middle K_8 blocks that is 8*2 = 16 edges.
  std::size_t between = 0;
  for (const perc::Edge& e : g.edges()) {
    const bool u_mid1 = e.u >= 16 && e.u < 24, v_mid1 = e.v >= 16 && e.v < 24;
    const bool u_mid2 = e.u >= 24 && e.u < 32, v_mid2 = e.v >= 24 && e.v < 32;
    if ((u_mid1 && v_mid2) || (u_mid2 && v_mid1)) ++between;
  }
  CHECK(between == 16);
}

TEST_CASE("path pair gadget") {
  const Graph g = Graph::path_pair(5);
  CHECK(g.n_vertices() == 10);
  CHECK(g.n_edges() == 9);
  CHECK(g.is_connected());
  const perc::Edge bridge = g.edge(static_cast<std::uint32_t>(g.n_edges() - 1));
  CHECK(bridge.u == 4);
  CHECK(bridge.v == 5);
  g.check_invariants();
}

TEST_CASE("diameter bound for dense graphs") {
  // Connected graphs with min degree >= a|V| have diameter <= (3-a)/a.
  for (const Graph& g : {Graph::complete(12),
                         Graph::cartesian_product(Graph::complete(8), Graph::complete(2)),
                         Graph::molecular_chain(8, 0.3)}) {
    const double a =
        static_cast<double>(g.min_degree()) / static_cast<double>(g.n_vertices());
    REQUIRE(a > 0.0);
    CHECK(perc::diameter(g).upper <= (3.0 - a) / a);
  }
}

TEST_CASE("diameter rejects disconnected graphs") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}}, "gadget");
  CHECK_THROWS(perc::diameter(g));
}

TEST_CASE("graph JSON round trip") {
  for (const Graph& g :
       {Graph::torus({4, 4}), Graph::molecular_chain(8, 0.3), Graph::path_pair(5)}) {
    const Graph back = perc::graph_from_json(perc::graph_to_json(g));
    CHECK(back.n_vertices() == g.n_vertices());
    CHECK(back.n_edges() == g.n_edges());
    CHECK(back.transitive() == g.transitive());
    CHECK(back.family_tag() == g.family_tag());
    CHECK(back.edge_orbits() == g.edge_orbits());
    for (std::uint32_t e = 0; e < g.n_edges(); ++e) {
      CHECK(back.edge(e).u == g.edge(e).u);
      CHECK(back.edge(e).v == g.edge(e).v);
    }
    CHECK(perc::graph_digest(back) == perc::graph_digest(g));
  }
}

TEST_CASE("invariant checker runs on every family") {
  Graph::cycle(5).check_invariants();
  Graph::torus({3, 4, 5}).check_invariants();
  Graph::hypercube(4).check_invariants();
  Graph::complete(7).check_invariants();
  Graph::cartesian_product(Graph::cycle(3), Graph::complete(3)).check_invariants();
  perc::Graph::abelian_cayley({6}, {{1}, {2}}).check_invariants();
  Graph::molecular_chain(6, 0.4).check_invariants();
  Graph::path(6).check_invariants();
  Graph::path_pair(4).check_invariants();
}
