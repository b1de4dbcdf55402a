#include "perc/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "perc/errors.hpp"
#include "perc/parallel.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace perc {

namespace {

constexpr double kBalanceEps = 1e-9;

double total_degree(const Graph& g) { return 2.0 * static_cast<double>(g.n_edges()); }

bool feasible(double deg_a, double total, double theta) {
  return deg_a >= theta * total - kBalanceEps && deg_a <= (1.0 - theta) * total + kBalanceEps;
}

SeparatorResult exact_separator(const Graph& g, double theta) {
  const std::uint32_t n = g.n_vertices();
  if (n > 24) throw size_limit("exact separator limited to 24 vertices");
  const double total = total_degree(g);

  std::vector<std::uint32_t> adj_mask(n, 0);
  for (const Edge& e : g.edges()) {
    adj_mask[e.u] |= 1u << e.v;
    adj_mask[e.v] |= 1u << e.u;
  }

  // Gray-code walk over all subsets with incremental cut and degree updates.
  std::uint32_t mask = 0;
  std::int64_t cut = 0;
  double deg_a = 0.0;
  std::uint64_t best_cut = ~0ull;
  std::uint32_t best_mask = 0;
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < end; ++i) {
    const std::uint32_t v = static_cast<std::uint32_t>(std::countr_zero(i));
    const std::uint32_t bit = 1u << v;
    const bool adding = (mask & bit) == 0;
    mask ^= bit;
    const int deg = static_cast<int>(g.degree(v));
    const int k = std::popcount(adj_mask[v] & mask);  // neighbours inside A \ {v}
    if (adding) {
      cut += deg - 2 * k;
      deg_a += deg;
    } else {
      cut += 2 * k - deg;
      deg_a -= deg;
    }
    if (feasible(deg_a, total, theta) && static_cast<std::uint64_t>(cut) < best_cut) {
      best_cut = static_cast<std::uint64_t>(cut);
      best_mask = mask;
    }
  }
  if (best_cut == ~0ull) throw invalid_parameter("no feasible bipartition for this theta");

  SeparatorResult out;
  out.theta = theta;
  out.exact = true;
  out.cut_size = best_cut;
  double share = 0.0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (best_mask & (1u << v)) {
      out.side_a.push_back(v);
      share += g.degree(v);
    }
  out.degree_weighted_share = share / total;
  return out;
}

struct LocalSearchState {
  std::vector<std::uint8_t> in_a;
  double deg_a = 0.0;
  std::int64_t cut = 0;
};

std::int64_t move_delta(const Graph& g, const LocalSearchState& st, std::uint32_t v) {
  int k = 0;
  for (const AdjEntry& a : g.neighbors(v)) k += st.in_a[a.vertex];
  const int deg = static_cast<int>(g.degree(v));
  return st.in_a[v] ? 2 * k - deg : deg - 2 * k;
}

SeparatorResult heuristic_separator(const Graph& g, double theta, std::uint64_t budget,
                                    std::uint64_t seed) {
  const std::uint32_t n = g.n_vertices();
  const double total = total_degree(g);
  constexpr int kRestarts = 32;

  std::vector<std::uint64_t> best_cut(kRestarts, ~0ull);
  std::vector<std::vector<std::uint8_t>> best_side(kRestarts);

  parallel_for(kRestarts, [&](std::uint64_t restart, int) {
    SplitRng rng(seed, restart);
    LocalSearchState st;
    st.in_a.assign(n, 0);
    // Random start filled to roughly half the total degree.
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
    for (std::uint32_t t = 0; t + 1 < n; ++t)
      std::swap(order[t], order[t + rng.next_below(n - t)]);
    for (std::uint32_t v : order) {
      if (st.deg_a + g.degree(v) > 0.5 * total) break;
      st.in_a[v] = 1;
      st.deg_a += g.degree(v);
    }
    st.cut = 0;
    for (const Edge& e : g.edges())
      if (st.in_a[e.u] != st.in_a[e.v]) ++st.cut;

    std::uint64_t local_best = feasible(st.deg_a, total, theta)
                                   ? static_cast<std::uint64_t>(st.cut)
                                   : ~0ull;
    std::vector<std::uint8_t> local_side = st.in_a;

    const double t0 = std::max(1.0, g.mean_degree() / 2.0);
    for (std::uint64_t it = 0; it < budget; ++it) {
      const std::uint32_t v = rng.next_below(n);
      const double new_deg_a = st.in_a[v] ? st.deg_a - g.degree(v) : st.deg_a + g.degree(v);
      if (!feasible(new_deg_a, total, theta)) continue;  // hard balance window
      const std::int64_t delta = move_delta(g, st, v);
      const double temp = t0 * (1.0 - static_cast<double>(it) / budget) + 1e-3;
      if (delta > 0 && rng.next_double() >= std::exp(-static_cast<double>(delta) / temp))
        continue;
      st.in_a[v] ^= 1;
      st.deg_a = new_deg_a;
      st.cut += delta;
      if (static_cast<std::uint64_t>(st.cut) < local_best) {
        local_best = static_cast<std::uint64_t>(st.cut);
        local_side = st.in_a;
      }
    }
    best_cut[restart] = local_best;
    best_side[restart] = std::move(local_side);
  });

  int winner = -1;
  for (int r = 0; r < kRestarts; ++r)
    if (winner < 0 || best_cut[r] < best_cut[winner]) winner = r;
  if (winner < 0 || best_cut[winner] == ~0ull)
    throw invalid_parameter("no feasible bipartition found for this theta");

  SeparatorResult out;
  out.theta = theta;
  out.exact = false;
  out.cut_size = best_cut[winner];
  double share = 0.0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (best_side[winner][v]) {
      out.side_a.push_back(v);
      share += g.degree(v);
    }
  out.degree_weighted_share = share / total;
  return out;
}

}  // namespace

std::uint64_t boundary_size(const Graph& g, const std::vector<std::uint32_t>& side_a) {
  std::vector<std::uint8_t> in(g.n_vertices(), 0);
  for (std::uint32_t v : side_a) in[v] = 1;
  std::uint64_t cut = 0;
  for (const Edge& e : g.edges())
    if (in[e.u] != in[e.v]) ++cut;
  return cut;
}

SeparatorResult separator(const Graph& g, double theta, SeparatorMode mode,
                          std::uint64_t budget, std::uint64_t seed) {
  if (!(theta > 0.0 && theta <= 0.5)) throw invalid_parameter("theta must lie in (0, 1/2]");
  SeparatorResult out = mode == SeparatorMode::exact ? exact_separator(g, theta)
                                                     : heuristic_separator(g, theta, budget, seed);
  if (boundary_size(g, out.side_a) != out.cut_size)
    throw resolution_error("separator cut size failed independent recount");
  return out;
}

namespace {

struct RemovalOutcome {
  std::uint32_t m = 0;
  bool every_component_has_edge = false;
  bool equal_sizes = false;
};

RemovalOutcome remove_and_count(const Graph& g, const std::vector<std::uint32_t>& orbit_of,
                                std::uint32_t orbit_mask) {
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if ((orbit_mask & (1u << orbit_of[e])) == 0) uf.unite(g.edge(e).u, g.edge(e).v);

  std::vector<std::uint32_t> edge_count(g.n_vertices(), 0);
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if ((orbit_mask & (1u << orbit_of[e])) == 0) ++edge_count[uf.find(g.edge(e).u)];

  RemovalOutcome out;
  out.every_component_has_edge = true;
  out.equal_sizes = true;
  std::uint32_t first_size = 0;
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v) {
    if (uf.find(v) != v) continue;
    ++out.m;
    if (edge_count[v] == 0) out.every_component_has_edge = false;
    const std::uint32_t s = uf.component_size(v);
    if (first_size == 0)
      first_size = s;
    else if (s != first_size)
      out.equal_sizes = false;
  }
  return out;
}

}  // namespace

std::optional<MolecularReport> molecular_search(const Graph& g, double c_max,
                                                std::uint32_t m_max) {
  if (!g.edge_orbits())
    throw unsupported_graph("molecular search needs declared edge orbits");
  const EdgeOrbits& orbits = *g.edge_orbits();
  const std::uint32_t k = static_cast<std::uint32_t>(orbits.size());
  if (k > 18) throw size_limit("molecular search limited to 2^18 orbit subsets");

  std::vector<std::uint32_t> orbit_of(g.n_edges(), 0);
  for (std::uint32_t o = 0; o < k; ++o)
    for (std::uint32_t e : orbits[o]) orbit_of[e] = o;

  const double f_cap = c_max * g.n_vertices() + kBalanceEps;
  std::optional<MolecularReport> best;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::uint64_t f_size = 0;
    for (std::uint32_t o = 0; o < k; ++o)
      if (mask & (1u << o)) f_size += orbits[o].size();
    if (static_cast<double>(f_size) > f_cap) continue;
    const RemovalOutcome rc = remove_and_count(g, orbit_of, mask);
    if (rc.m < 2 || rc.m > m_max || !rc.every_component_has_edge) continue;
    if (best && (best->m < rc.m || (best->m == rc.m && best->f_size <= f_size))) continue;
    MolecularReport rep;
    rep.m = rc.m;
    rep.f_size = f_size;
    rep.c_ratio = static_cast<double>(f_size) / g.n_vertices();
    rep.components_equal_size = rc.equal_sizes;
    for (std::uint32_t o = 0; o < k; ++o)
      if (mask & (1u << o)) rep.removed_orbits.push_back(o);
    best = std::move(rep);
  }
  return best;
}

SeparatorResult molecular_witness_separator(const Graph& g, const MolecularReport& report,
                                            double theta) {
  if (!g.edge_orbits())
    throw unsupported_graph("molecular witness needs declared edge orbits");
  const EdgeOrbits& orbits = *g.edge_orbits();
  std::vector<std::uint8_t> removed(g.n_edges(), 0);
  for (std::uint32_t o : report.removed_orbits)
    for (std::uint32_t e : orbits[o]) removed[e] = 1;

  UnionFind uf(g.n_vertices());
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if (!removed[e]) uf.unite(g.edge(e).u, g.edge(e).v);

  // Components ordered by smallest contained vertex; A = first ceil(m/2).
  std::vector<std::uint32_t> roots;
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v)
    if (uf.find(v) == v) roots.push_back(v);
  std::vector<std::uint32_t> min_vertex(g.n_vertices(), g.n_vertices());
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v)
    min_vertex[uf.find(v)] = std::min(min_vertex[uf.find(v)], v);
  std::sort(roots.begin(), roots.end(),
            [&](std::uint32_t a, std::uint32_t b) { return min_vertex[a] < min_vertex[b]; });
  if (roots.size() != report.m)
    throw invalid_parameter("molecular report does not reproduce its component count");

  const std::uint32_t take = (report.m + 1) / 2;
  std::vector<std::uint8_t> in_a(g.n_vertices(), 0);
  for (std::uint32_t i = 0; i < take; ++i) {
    const std::uint32_t root = roots[i];
    for (std::uint32_t v = 0; v < g.n_vertices(); ++v)
      if (uf.find(v) == root) in_a[v] = 1;
  }

  SeparatorResult out;
  out.theta = theta;
  out.exact = false;
  double share = 0.0;
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v)
    if (in_a[v]) {
      out.side_a.push_back(v);
      share += g.degree(v);
    }
  out.degree_weighted_share = share / total_degree(g);
  out.cut_size = boundary_size(g, out.side_a);
  return out;
}

DensityReport dense_check(const Graph& g) {
  DensityReport out;
  const double n = static_cast<double>(g.n_vertices());
  out.edge_density = static_cast<double>(g.n_edges()) / (n * n);
  out.degree_ratio = static_cast<double>(g.max_degree()) / n;
  return out;
}

}  // namespace perc
