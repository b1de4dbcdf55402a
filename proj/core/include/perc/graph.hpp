#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perc/errors.hpp"

namespace perc {

struct Edge {
  std::uint32_t u;
  std::uint32_t v;
};

/// Adjacency entry: neighbouring vertex plus the index of the connecting edge.
struct AdjEntry {
  std::uint32_t vertex;
  std::uint32_t edge;
};

using EdgeOrbits = std::vector<std::vector<std::uint32_t>>;

/// Immutable simple graph with a fixed edge index space. Edge orbits, when
/// present, are declared by the constructor of the family (never computed by
/// automorphism search) and partition the edge indices into classes that are
/// invariant under the automorphisms the construction knows about.
///
/// Vertex and edge indexing is fixed per family (row-major for products), so
/// seeded runs reproduce bit-exactly.
class Graph {
public:
  static Graph cycle(int n);
  static Graph torus(const std::vector<int>& dims);
  static Graph hypercube(int d);
  static Graph complete(int n);
  static Graph cartesian_product(const Graph& g, const Graph& h);
  static Graph abelian_cayley(const std::vector<int>& moduli,
                              const std::vector<std::vector<int>>& generators);
  static Graph molecular_chain(int n, double alpha);
  static Graph path(int n);
  /// Two disjoint `len`-vertex paths joined by one bridge (the last edge).
  static Graph path_pair(int len);

  /// Escape hatch for gadget graphs and JSON deserialization.
  static Graph from_edges(std::uint32_t n_vertices, std::vector<Edge> edges,
                          std::string family, bool transitive = false,
                          std::optional<EdgeOrbits> orbits = std::nullopt,
                          std::string params_json = "{}");

  std::uint32_t n_vertices() const { return n_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::uint32_t e) const { return edges_[e]; }

  std::span<const AdjEntry> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
  std::uint32_t min_degree() const;
  std::uint32_t max_degree() const;
  /// d = 2|E|/|V|.
  double mean_degree() const {
    return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
  }

  bool transitive() const { return transitive_; }
  const std::optional<EdgeOrbits>& edge_orbits() const { return orbits_; }
  const std::string& family_tag() const { return family_; }
  /// Construction parameters as a compact JSON object string.
  const std::string& params_json() const { return params_json_; }

  bool is_connected() const;

  /// Throws invalid_parameter if any structural invariant fails: simplicity,
  /// connectivity, adjacency consistency, orbit partition, degree regularity
  /// of transitive families.
  void check_invariants() const;

private:
  Graph() = default;
  void build_adjacency();

  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<AdjEntry> adj_;
  std::optional<EdgeOrbits> orbits_;
  bool transitive_ = false;
  std::string family_;
  std::string params_json_ = "{}";
};

struct DiameterResult {
  int lower = 0;
  int upper = 0;
  bool exact = true;
};

/// Exact all-sources BFS for |V| <= 4096; above that, a bracket from 64
/// evenly spaced sources (lower = max sampled eccentricity, upper = twice the
/// smallest sampled eccentricity). Throws on disconnected input.
DiameterResult diameter(const Graph& g);

/// Single-source eccentricity (exact BFS).
int eccentricity(const Graph& g, std::uint32_t source);

}  // namespace perc
