#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "perc/graph.hpp"

namespace perc {

struct SeparatorResult {
  double theta = 0.0;
  std::uint64_t cut_size = 0;
  std::vector<std::uint32_t> side_a;  // sorted vertex indices
  bool exact = false;
  double degree_weighted_share = 0.0;  // sum of deg over A / sum over V
};

enum class SeparatorMode { exact, heuristic };

/// Minimum edge boundary over degree-weighted balanced bipartitions
/// (theta <= share <= 1-theta). Exact mode enumerates all subsets and
/// requires |V| <= 24; heuristic mode is a multi-start local search with
/// single-vertex moves confined to the feasible balance window.
SeparatorResult separator(const Graph& g, double theta,
                          SeparatorMode mode = SeparatorMode::heuristic,
                          std::uint64_t budget = 20000, std::uint64_t seed = 0x5eed);

/// Independent recount of |boundary(side_a)|; used to verify results.
std::uint64_t boundary_size(const Graph& g, const std::vector<std::uint32_t>& side_a);

struct MolecularReport {
  std::uint32_t m = 0;  // component count after removal, >= 2
  std::vector<std::uint32_t> removed_orbits;
  std::uint64_t f_size = 0;
  double c_ratio = 0.0;  // |F| / |V|
  bool components_equal_size = false;
};

/// Exhaustive search over unions of declared edge orbits with total size
/// <= C|V| whose removal splits the graph into 2..m_max components, each
/// still carrying at least one edge. Returns the qualifying decomposition
/// with the smallest m (ties: smallest |F|), or nullopt.
std::optional<MolecularReport> molecular_search(const Graph& g, double c_max,
                                                std::uint32_t m_max);

/// Balanced bipartition witness built from a molecular decomposition: side A
/// is the union of ceil(m/2) components, whose boundary is at most |F|.
SeparatorResult molecular_witness_separator(const Graph& g, const MolecularReport& report,
                                            double theta);

struct DensityReport {
  double edge_density = 0.0;  // |E| / |V|^2
  double degree_ratio = 0.0;  // max degree / |V|
};

DensityReport dense_check(const Graph& g);

}  // namespace perc
