#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "perc/graph.hpp"
#include "perc/rng.hpp"
#include "perc/stats.hpp"
#include "perc/union_find.hpp"

namespace perc {

/// Open/closed state over a graph's edge index space. The dense indicator and
/// the open-edge index list are kept consistent; the list is what makes
/// sparse configurations cheap to traverse and reset.
struct Configuration {
  std::vector<std::uint8_t> open;
  std::vector<std::uint32_t> open_edges;

  bool matches(const Graph& g) const { return open.size() == g.n_edges(); }
};

struct ClusterDecomposition {
  /// Per-vertex cluster id; ids are ordered by (size desc, smallest contained
  /// vertex asc), so id 0 is K1 and id 1 (when present) is K2.
  std::vector<std::uint32_t> representative;
  /// Cluster sizes sorted descending (same order as the ids).
  std::vector<std::uint32_t> sizes;
  std::uint32_t k1 = 0;
  std::uint32_t k2 = 0;
  double k1_density = 0.0;
  double k2_density = 0.0;
};

/// Bernoulli(p) bond configuration, deterministic given (seed, stream).
Configuration sample(const Graph& g, double p, std::uint64_t seed, std::uint64_t stream);

/// In-place variant for replica loops: resets cfg via its open-edge list, then
/// skip-samples, so the cost is O(#open) rather than O(|E|).
void sample_into(const Graph& g, double p, SplitRng& rng, Configuration& cfg);

ClusterDecomposition clusters(const Graph& g, const Configuration& cfg);

/// Largest and second-largest component sizes only; uf is scratch (will be
/// reset). The cheap inner loop of every estimator.
std::pair<std::uint32_t, std::uint32_t> k1_k2(const Graph& g, const Configuration& cfg,
                                              UnionFind& uf);

bool connected(const Graph& g, const Configuration& cfg, std::uint32_t u, std::uint32_t v);
std::vector<std::uint32_t> cluster_of(const Graph& g, const Configuration& cfg,
                                      std::uint32_t v);

/// max over clusters of |cluster ∩ Λ|.
std::uint32_t largest_intersection(const Graph& g, const Configuration& cfg,
                                   const std::vector<std::uint32_t>& lambda);

/// Statistics along one uniformly random edge-insertion order. Index m holds
/// the state after the first m edges of the permutation are open.
struct SweepRecord {
  std::vector<std::uint32_t> k1;   // |E|+1 entries, nondecreasing
  std::vector<std::uint32_t> k2;   // |E|+1 entries
  std::vector<std::uint8_t> event; // present iff a predicate was supplied
};

using SweepEvent = std::function<bool(std::uint32_t k1, std::uint32_t k2)>;

SweepRecord sweep(const Graph& g, std::uint64_t seed, std::uint64_t stream,
                  const SweepEvent& event = nullptr);
SweepRecord sweep(const Graph& g, SplitRng& rng, const SweepEvent& event = nullptr);

/// Binomially mixed sweep statistic: sum_m Binom(m; |E|, p) * stat[m].
/// Equals the Bernoulli-p expectation of the statistic.
double binomial_mix(const std::vector<double>& stat_by_m, double p);

struct TwoPointProfile {
  std::uint32_t source = 0;
  std::vector<Proportion> estimate;  // indexed by target vertex
  std::uint32_t min_vertex = 0;      // argmin over v != source
  Proportion min_estimate;
};

/// Empirical two-point function v -> P_p(u <-> v) with Wilson intervals.
TwoPointProfile two_point_profile(const Graph& g, double p, std::uint32_t u,
                                  std::uint64_t replicas, std::uint64_t seed);

}  // namespace perc
