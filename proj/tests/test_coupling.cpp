#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "perc/coupling.hpp"
#include "perc/errors.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"
#include "perc/percolation.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

using perc::Graph;

TEST_CASE("coupled samples are nested configurations") {
  const Graph g = Graph::torus({8, 8});
  perc::UnionFind uf(g.n_vertices());
  for (std::uint64_t r = 0; r < 200; ++r) {
    const perc::CoupledPair pair = perc::sample_coupled(g, 0.3, 0.7, 61, r);
    for (std::uint32_t e : pair.omega_q.open_edges) CHECK(pair.omega_p.open[e]);
    CHECK(perc::k1_k2(g, pair.omega_q, uf).first <= perc::k1_k2(g, pair.omega_p, uf).first);
  }

  const perc::CoupledPair same = perc::sample_coupled(g, 0.5, 0.5, 61, 0);
  CHECK(same.omega_p.open == same.omega_q.open);
  const perc::CoupledPair none = perc::sample_coupled(g, 0.0, 0.5, 61, 0);
  CHECK(none.omega_q.open_edges.empty());

  CHECK_THROWS_AS(perc::sample_coupled(g, 0.8, 0.5, 61, 0), perc::invalid_parameter);
}

TEST_CASE("thinned marginal matches an independent run") {
  const Graph g = Graph::torus({8, 8});
  const double q = 0.4, p = 0.7;
  const std::uint64_t replicas = 10000;
  perc::UnionFind uf(g.n_vertices());
  double coupled_sum = 0.0, coupled_sq = 0.0, direct_sum = 0.0, direct_sq = 0.0;
  perc::Configuration cfg;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    const perc::CoupledPair pair = perc::sample_coupled(g, q, p, 67, r);
    const double a =
        static_cast<double>(perc::k1_k2(g, pair.omega_q, uf).first) / g.n_vertices();
    coupled_sum += a;
    coupled_sq += a * a;
    perc::SplitRng rng(68, r);
    perc::sample_into(g, q, rng, cfg);
    const double b = static_cast<double>(perc::k1_k2(g, cfg, uf).first) / g.n_vertices();
    direct_sum += b;
    direct_sq += b * b;
  }
  const double ma = coupled_sum / replicas, mb = direct_sum / replicas;
  const double va = coupled_sq / replicas - ma * ma, vb = direct_sq / replicas - mb * mb;
  const double se = std::sqrt((va + vb) / replicas);
  CHECK(std::abs(ma - mb) < 4.0 * se + 1e-4);
}

TEST_CASE("induced subgraphs pick up interior edges only") {
  const Graph k4 = Graph::complete(4);
  const perc::Subgraph s = perc::induced_subgraph(k4, {0, 1, 2});
  CHECK(s.vertices.size() == 3);
  CHECK(s.edges.size() == 3);
  for (std::uint32_t e : s.edges) {
    CHECK(k4.edge(e).u <= 2);
    CHECK(k4.edge(e).v <= 2);
  }
}

TEST_CASE("sandcastle score degenerate rates") {
  const Graph k4 = Graph::complete(4);
  const perc::Subgraph tri = perc::induced_subgraph(k4, {0, 1, 2});

  // q = p: the subgraph stays fully open, so the verdict is deterministic.
  const auto same = perc::sandcastle_score(k4, tri, 0.5, 0.5, 0.5, 200, 71);
  CHECK(same.score.hat == 0.0);  // density 3/4 >= alpha 0.5: never shatters
  CHECK_FALSE(same.is_sandcastle);
  const auto high = perc::sandcastle_score(k4, tri, 0.5, 0.5, 0.9, 200, 71);
  CHECK(high.score.hat == 1.0);  // 3/4 < 0.9: always below the density bar

  // q = 0: thinning keeps nothing, every cluster is a singleton.
  const auto zero = perc::sandcastle_score(k4, tri, 0.0, 0.5, 0.5, 200, 71);
  CHECK(zero.score.hat == 1.0);

  perc::Subgraph disconnected;
  disconnected.vertices = {0, 1, 2, 3};
  disconnected.edges = {};
  CHECK_THROWS_AS(perc::sandcastle_score(k4, disconnected, 0.2, 0.5, 0.5, 10, 71),
                  perc::invalid_parameter);
}

TEST_CASE("a supercritical cluster thinned to subcritical rates is a sandcastle") {
  // One K_200 copy of the product percolated at p = 2/200 carries a sparse
  // cluster; retaining its edges at q/p = 1/4 leaves mean degree ~0.5.
  const int n = 200;
  const Graph g = Graph::cartesian_product(Graph::complete(n), Graph::complete(2));
  const double p = 2.0 / n, q = 0.5 / n;
  std::uint64_t shatter_votes = 0, scored = 0;
  for (std::uint64_t r = 0; r < 50; ++r) {
    const perc::Configuration omega = perc::sample(g, p, 73, r);
    const std::vector<std::uint32_t> cluster = perc::cluster_of(g, omega, 0);
    if (cluster.size() < 20) continue;  // want a macroscopic cluster
    perc::Subgraph s;
    s.vertices = cluster;
    std::vector<std::uint8_t> in(g.n_vertices(), 0);
    for (std::uint32_t v : cluster) in[v] = 1;
    for (std::uint32_t e : omega.open_edges)
      if (in[g.edge(e).u] && in[g.edge(e).v]) s.edges.push_back(e);
    const auto rep = perc::sandcastle_score(g, s, q, p, 0.1, 128, 74 + r);
    ++scored;
    if (rep.score.hat >= 0.9) ++shatter_votes;
  }
  REQUIRE(scored >= 10);
  CHECK(static_cast<double>(shatter_votes) / static_cast<double>(scored) >= 0.8);
}

TEST_CASE("sandcastle frequency right hand side is negative with a unique giant") {
  const Graph g = Graph::complete(400);
  const double p = 2.5 / 400, q = 0.9 * p;
  const auto freq = perc::sandcastle_frequency(g, p, q, 0.2, 0.2, 200, 79, 32);
  CHECK(freq.k2_p.hat <= 0.05);  // unique giant: second cluster never macroscopic
  CHECK(freq.rhs <= 3.0 * freq.rhs_sigma);
  CHECK(freq.sup_frequency >= 0.0);
}

TEST_CASE("second cluster tail bound via the two point minimum") {
  // P_q(|K2| >= 2 delta) <= (1 + 1/(4 delta^2 tau)) P_q(| |K1| - a | >= delta) + 3 sigma
  // with tau the measured minimum two-point probability and a the mean density.
  for (const Graph& g : {Graph::complete(1000), Graph::torus({32, 32})}) {
    const double q = g.family_tag() == "complete" ? 2.0 / 1000 : 0.55;
    const std::uint64_t replicas = 1500;
    perc::Configuration cfg;
    perc::UnionFind uf(g.n_vertices());
    std::vector<double> k1s(replicas), k2s(replicas);
    double mean = 0.0;
    for (std::uint64_t r = 0; r < replicas; ++r) {
      perc::SplitRng rng(83, r);
      perc::sample_into(g, q, rng, cfg);
      const auto [k1, k2] = perc::k1_k2(g, cfg, uf);
      k1s[r] = static_cast<double>(k1) / g.n_vertices();
      k2s[r] = static_cast<double>(k2) / g.n_vertices();
      mean += k1s[r];
    }
    mean /= static_cast<double>(replicas);
    const double delta = 0.05;
    std::uint64_t k2_big = 0, k1_dev = 0;
    for (std::uint64_t r = 0; r < replicas; ++r) {
      if (k2s[r] >= 2 * delta) ++k2_big;
      if (std::abs(k1s[r] - mean) >= delta) ++k1_dev;
    }
    const double tau =
        perc::two_point_profile(g, q, 0, 1500, 89).min_estimate.hat;
    REQUIRE(tau > 0.0);
    const double lhs = static_cast<double>(k2_big) / replicas;
    const double dev = static_cast<double>(k1_dev) / replicas;
    const double sigma = std::sqrt(lhs * (1 - lhs) / replicas) +
                         std::sqrt(dev * (1 - dev) / replicas);
    CHECK(lhs <= (1.0 + 1.0 / (4 * delta * delta * tau)) * dev + 3.0 * sigma + 1e-9);
  }
}

TEST_CASE("localization probability degenerate subgraphs") {
  const Graph g = Graph::complete(60);
  std::vector<std::uint32_t> all(g.n_vertices());
  std::iota(all.begin(), all.end(), 0u);
  const auto gone = perc::localization_probability(g, all, 0.1, 0.05, 500, 91);
  CHECK(gone.hat == 0.0);

  const auto free = perc::localization_probability(g, {}, 0.05, 0.5, 4000, 91);
  // With H empty this is plain P_q(density of K1 >= beta).
  perc::Configuration cfg;
  perc::UnionFind uf(g.n_vertices());
  std::uint64_t hits = 0;
  const std::uint64_t replicas = 4000;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    perc::SplitRng rng(92, r);
    perc::sample_into(g, 0.05, rng, cfg);
    if (perc::k1_k2(g, cfg, uf).first >= 30) ++hits;
  }
  const double direct = static_cast<double>(hits) / replicas;
  CHECK(std::abs(free.hat - direct) < 0.05);
}

TEST_CASE("activator probability against the path pair enumeration") {
  const Graph g = Graph::path_pair(5);
  const std::uint32_t bridge = static_cast<std::uint32_t>(g.n_edges() - 1);
  const auto est = perc::activator_probability(g, {bridge}, 0.7, 0.5, 60000, 93);

  const auto event = perc::event_k1_density(0.7);
  const auto lc = perc::exact_event(g, [&](const Graph& h, std::uint32_t mask) {
    return !event(h, mask) && event(h, mask | (1u << bridge));
  });
  const double exact = perc::eval(lc, 0.5);
  CHECK(est.lo - 0.01 <= exact);
  CHECK(exact <= est.hi + 0.01);

  CHECK(perc::activator_probability(g, {}, 0.7, 0.5, 100, 93).hat == 0.0);
}

TEST_CASE("bridge orbit activates the joint giant") {
  const int n = 300;
  const Graph g = Graph::cartesian_product(Graph::complete(n), Graph::complete(2));
  const auto& bridges = g.edge_orbits()->back();
  const auto est = perc::activator_probability(
      g, {bridges.begin(), bridges.end()}, 0.6, 2.2 / n, 3000, 97);
  CHECK(est.hat >= 0.05);
}
