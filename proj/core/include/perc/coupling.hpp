#pragma once

#include <cstdint>
#include <vector>

#include "perc/graph.hpp"
#include "perc/percolation.hpp"
#include "perc/stats.hpp"

namespace perc {

/// Monotone coupling of P_q and P_p: omega_q is omega_p thinned edgewise at
/// rate q/p, so omega_q is always a subset and both marginals are exact.
struct CoupledPair {
  double q = 0.0;
  double p = 0.0;
  Configuration omega_p;
  Configuration omega_q;
};

CoupledPair sample_coupled(const Graph& g, double q, double p, std::uint64_t seed,
                           std::uint64_t stream);

/// A subgraph given as a vertex set plus the edges that carry it.
struct Subgraph {
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> edges;  // edge indices into the host graph
};

/// All host edges with both endpoints inside the vertex set.
Subgraph induced_subgraph(const Graph& g, const std::vector<std::uint32_t>& vertices);

struct SandcastleReport {
  std::uint32_t subgraph_id = 0;
  double density = 0.0;  // |V(S)| / |V(G)|
  Proportion score;      // P(density of K1(omega_q ∩ S) < alpha | S ⊆ omega_p)
  bool is_sandcastle = false;
};

/// Scores S by the conditional law given S fully open at p: each edge of S is
/// retained independently with probability q/p. The verdict compares the
/// Wilson lower bound of the score against score_threshold and requires
/// density >= beta.
SandcastleReport sandcastle_score(const Graph& g, const Subgraph& s, double q, double p,
                                  double alpha, std::uint64_t replicas, std::uint64_t seed,
                                  double beta = 0.0, double score_threshold = 0.5);

struct SandcastleFrequency {
  std::vector<std::uint32_t> probes;
  std::vector<Proportion> frequency;  // per probe: P_p(K_u is a sandcastle)
  double sup_frequency = 0.0;
  Proportion k2_p;          // P_p(density of K2 >= beta)
  Proportion k2_q;          // P_q(density of K2 >= alpha)
  double rhs = 0.0;         // beta * (k2_p - 4 * k2_q)
  double rhs_sigma = 0.0;   // propagated standard error of rhs
};

/// Per-(outer replica, probe) observation. May be invoked concurrently from
/// worker threads; receivers must index storage by (replica, probe).
using SandcastleRow = std::function<void(std::uint64_t replica, std::uint32_t probe,
                                         double density, std::uint64_t shatters,
                                         bool verdict)>;

/// Nested Monte Carlo: outer replicas draw omega_p, each probe vertex's
/// cluster is scored with inner_replicas conditional thinnings.
SandcastleFrequency sandcastle_frequency(const Graph& g, double p, double q, double alpha,
                                         double beta, std::uint64_t replicas,
                                         std::uint64_t seed,
                                         std::uint64_t inner_replicas = 64,
                                         std::vector<std::uint32_t> probes = {},
                                         const SandcastleRow& row = nullptr);

/// P_q(density of K1(omega \ H-bar) >= beta) where H-bar is every edge with an
/// endpoint in the given vertex set.
Proportion localization_probability(const Graph& g,
                                    const std::vector<std::uint32_t>& h_vertices, double q,
                                    double beta, std::uint64_t replicas,
                                    std::uint64_t seed);

/// P_p(omega not in A but omega ∪ H in A) for A = {density of K1 >= alpha}.
Proportion activator_probability(const Graph& g, const std::vector<std::uint32_t>& h_edges,
                                 double alpha, double p, std::uint64_t replicas,
                                 std::uint64_t seed);

}  // namespace perc
