#include <cstdint>
#include <vector>

#include "doctest.h"
#include "perc/errors.hpp"
#include "perc/graph.hpp"
#include "perc/structure.hpp"
#include "perc/union_find.hpp"

using perc::Graph;
using perc::SeparatorMode;

TEST_CASE("exact separator on the complete graph") {
  const Graph k6 = Graph::complete(6);
  const auto res = perc::separator(k6, 1.0 / 3.0, SeparatorMode::exact);
  CHECK(res.exact);
  CHECK(res.cut_size == 8);  // |A| = 2: 2*4 = 8 beats the 3+3 split's 9
  CHECK(res.side_a.size() == 2);
  CHECK(res.cut_size == perc::boundary_size(k6, res.side_a));
  CHECK(res.degree_weighted_share >= 1.0 / 3.0 - 1e-9);
  CHECK(res.degree_weighted_share <= 2.0 / 3.0 + 1e-9);
}

TEST_CASE("exact separator on the small torus") {
  const Graph t = Graph::torus({4, 4});
  const auto res = perc::separator(t, 1.0 / 3.0, SeparatorMode::exact);
  CHECK(res.exact);
  CHECK(res.cut_size == 8);  // two adjacent columns
  CHECK(res.cut_size == perc::boundary_size(t, res.side_a));
}

TEST_CASE("heuristic never beats the exact optimum") {
  for (const Graph& g : {Graph::complete(6), Graph::torus({4, 4}), Graph::hypercube(4)}) {
    const auto exact = perc::separator(g, 1.0 / 3.0, SeparatorMode::exact);
    const auto heur = perc::separator(g, 1.0 / 3.0, SeparatorMode::heuristic, 4000, 3);
    CHECK(heur.cut_size >= exact.cut_size);
    CHECK_FALSE(heur.exact);
    CHECK(heur.cut_size == perc::boundary_size(g, heur.side_a));
  }
}

TEST_CASE("heuristic finds the bridge cut of the product") {
  const Graph box = Graph::cartesian_product(Graph::complete(20), Graph::complete(2));
  const auto res = perc::separator(box, 1.0 / 3.0, SeparatorMode::heuristic, 20000, 5);
  CHECK(res.cut_size <= 20);
  CHECK(res.degree_weighted_share >= 1.0 / 3.0 - 1e-9);
  CHECK(res.degree_weighted_share <= 2.0 / 3.0 + 1e-9);
}

TEST_CASE("exact separator size cap") {
  CHECK_THROWS_AS(perc::separator(Graph::complete(26), 1.0 / 3.0, SeparatorMode::exact),
                  perc::size_limit);
}

TEST_CASE("orbit removal splits the product into its two copies") {
  const Graph box = Graph::cartesian_product(Graph::complete(20), Graph::complete(2));
  const auto rep = perc::molecular_search(box, 2.0, 64);
  REQUIRE(rep.has_value());
  CHECK(rep->m == 2);
  CHECK(rep->f_size == 20);
  CHECK(rep->c_ratio == doctest::Approx(0.5));
  CHECK(rep->components_equal_size);

  // Re-remove the orbits and recount the components independently.
  std::vector<std::uint8_t> removed(box.n_edges(), 0);
  for (std::uint32_t orbit : rep->removed_orbits)
    for (std::uint32_t e : box.edge_orbits()->at(orbit)) removed[e] = 1;
  perc::UnionFind uf(box.n_vertices());
  for (std::uint32_t e = 0; e < box.n_edges(); ++e)
    if (!removed[e]) uf.unite(box.edge(e).u, box.edge(e).v);
  std::uint32_t components = 0;
  for (std::uint32_t v = 0; v < box.n_vertices(); ++v)
    if (uf.find(v) == v) ++components;
  CHECK(components == rep->m);

  const auto witness = perc::molecular_witness_separator(box, *rep, 1.0 / 3.0);
  CHECK(witness.cut_size <= rep->f_size);
  CHECK(witness.cut_size == perc::boundary_size(box, witness.side_a));
}

TEST_CASE("torus axis removal is detected but the graph is sparse") {
  const Graph t = Graph::torus({16, 16});
  const auto rep = perc::molecular_search(t, 4.0, 64);
  REQUIRE(rep.has_value());
  CHECK(rep->m == 16);  // one axis removed leaves 16 disjoint cycles
  CHECK(rep->f_size == 256);
  const perc::DensityReport density = perc::dense_check(t);
  CHECK(density.edge_density < 0.01);  // sequence-level density clearly fails
}

TEST_CASE("single orbit families have no molecular decomposition") {
  CHECK_FALSE(perc::molecular_search(Graph::complete(30), 4.0, 64).has_value());
}

TEST_CASE("molecular search needs declared orbits") {
  CHECK_THROWS_AS(perc::molecular_search(Graph::molecular_chain(8, 0.3), 4.0, 64),
                  perc::unsupported_graph);
}

TEST_CASE("density ratios") {
  const perc::DensityReport kn = perc::dense_check(Graph::complete(100));
  CHECK(kn.edge_density == doctest::Approx(99.0 / 200.0));
  CHECK(kn.degree_ratio == doctest::Approx(0.99));

  const perc::DensityReport ring = perc::dense_check(Graph::cycle(50));
  CHECK(ring.edge_density == doctest::Approx(1.0 / 50.0));

  const perc::DensityReport cube = perc::dense_check(Graph::hypercube(10));
  CHECK(cube.edge_density == doctest::Approx(5120.0 / (1024.0 * 1024.0)));
}
