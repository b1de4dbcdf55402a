#include "perc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "perc/errors.hpp"
#include "perc/parallel.hpp"

namespace perc {

void sample_into(const Graph& g, double p, SplitRng& rng, Configuration& cfg) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_parameter("p must lie in [0,1]");
  const std::size_t m = g.n_edges();
  if (cfg.open.size() != m) {
    cfg.open.assign(m, 0);
    cfg.open_edges.clear();
  } else {
    for (std::uint32_t e : cfg.open_edges) cfg.open[e] = 0;
    cfg.open_edges.clear();
  }
  if (p <= 0.0) return;
  if (p >= 1.0) {
    std::fill(cfg.open.begin(), cfg.open.end(), 1);
    cfg.open_edges.resize(m);
    std::iota(cfg.open_edges.begin(), cfg.open_edges.end(), 0u);
    return;
  }
  const double log1mp = std::log1p(-p);
  std::uint64_t i = rng.geometric_skip(log1mp);
  while (i < m) {
    cfg.open[i] = 1;
    cfg.open_edges.push_back(static_cast<std::uint32_t>(i));
    i += 1 + rng.geometric_skip(log1mp);
  }
}

Configuration sample(const Graph& g, double p, std::uint64_t seed, std::uint64_t stream) {
  SplitRng rng(seed, stream);
  Configuration cfg;
  sample_into(g, p, rng, cfg);
  return cfg;
}

std::pair<std::uint32_t, std::uint32_t> k1_k2(const Graph& g, const Configuration& cfg,
                                              UnionFind& uf) {
  uf.reset();
  for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);
  std::uint32_t best = 0, second = 0;
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v) {
    if (uf.find(v) != v) continue;
    std::uint32_t s = uf.component_size(v);
    if (s > best) {
      second = best;
      best = s;
    } else if (s > second) {
      second = s;
    }
  }
  return {best, second};
}

ClusterDecomposition clusters(const Graph& g, const Configuration& cfg) {
  if (!cfg.matches(g)) throw invalid_parameter("configuration does not match graph");
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);

  const std::uint32_t n = g.n_vertices();
  // Collect roots; order clusters by (size desc, smallest vertex asc).
  std::vector<std::uint32_t> roots;
  for (std::uint32_t v = 0; v < n; ++v)
    if (uf.find(v) == v) roots.push_back(v);
  std::vector<std::uint32_t> min_vertex(n, n);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = uf.find(v);
    min_vertex[r] = std::min(min_vertex[r], v);
  }
  std::sort(roots.begin(), roots.end(), [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t sa = uf.component_size(a), sb = uf.component_size(b);
    if (sa != sb) return sa > sb;
    return min_vertex[a] < min_vertex[b];
  });

  ClusterDecomposition out;
  out.sizes.reserve(roots.size());
  std::vector<std::uint32_t> id_of_root(n, 0);
  for (std::uint32_t i = 0; i < roots.size(); ++i) {
    id_of_root[roots[i]] = i;
    out.sizes.push_back(uf.component_size(roots[i]));
  }
  out.representative.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) out.representative[v] = id_of_root[uf.find(v)];
  out.k1 = out.sizes.empty() ? 0 : out.sizes[0];
  out.k2 = out.sizes.size() > 1 ? out.sizes[1] : 0;
  out.k1_density = static_cast<double>(out.k1) / n;
  out.k2_density = static_cast<double>(out.k2) / n;
  return out;
}

bool connected(const Graph& g, const Configuration& cfg, std::uint32_t u, std::uint32_t v) {
  if (u == v) return true;
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);
  return uf.same(u, v);
}

std::vector<std::uint32_t> cluster_of(const Graph& g, const Configuration& cfg,
                                      std::uint32_t v) {
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);
  std::uint32_t root = uf.find(v);
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < g.n_vertices(); ++w)
    if (uf.find(w) == root) out.push_back(w);
  return out;
}

std::uint32_t largest_intersection(const Graph& g, const Configuration& cfg,
                                   const std::vector<std::uint32_t>& lambda) {
  if (lambda.empty()) throw invalid_parameter("largest_intersection: empty vertex set");
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);
  std::vector<std::uint32_t> hits(g.n_vertices(), 0);
  std::uint32_t best = 0;
  for (std::uint32_t v : lambda) {
    std::uint32_t r = uf.find(v);
    best = std::max(best, ++hits[r]);
  }
  return best;
}

SweepRecord sweep(const Graph& g, SplitRng& rng, const SweepEvent& event) {
  const std::uint32_t n = g.n_vertices();
  const std::size_t m = g.n_edges();
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t t = 0; t + 1 < m; ++t) {
    std::size_t j = t + rng.next_below(static_cast<std::uint32_t>(m - t));
    std::swap(perm[t], perm[j]);
  }

  UnionFind uf(n);
  // Multiset of component sizes keeps k2 exact through every union.
  std::multiset<std::uint32_t> sizes;
  for (std::uint32_t v = 0; v < n; ++v) sizes.insert(1);

  auto top_two = [&]() -> std::pair<std::uint32_t, std::uint32_t> {
    auto it = sizes.rbegin();
    std::uint32_t a = *it;
    ++it;
    std::uint32_t b = it == sizes.rend() ? 0 : *it;
    return {a, b};
  };

  SweepRecord rec;
  rec.k1.reserve(m + 1);
  rec.k2.reserve(m + 1);
  if (event) rec.event.reserve(m + 1);
  auto push = [&](std::uint32_t a, std::uint32_t b) {
    rec.k1.push_back(a);
    rec.k2.push_back(b);
    if (event) rec.event.push_back(event(a, b) ? 1 : 0);
  };
  auto [a0, b0] = top_two();
  push(a0, b0);

  for (std::size_t t = 0; t < m; ++t) {
    const Edge& e = g.edge(perm[t]);
    std::uint32_t ra = uf.find(e.u), rb = uf.find(e.v);
    if (ra != rb) {
      std::uint32_t sa = uf.component_size(ra), sb = uf.component_size(rb);
      uf.unite(ra, rb);
      sizes.erase(sizes.find(sa));
      sizes.erase(sizes.find(sb));
      sizes.insert(sa + sb);
    }
    auto [a, b] = top_two();
    push(a, b);
  }
  return rec;
}

SweepRecord sweep(const Graph& g, std::uint64_t seed, std::uint64_t stream,
                  const SweepEvent& event) {
  SplitRng rng(seed, stream);
  return sweep(g, rng, event);
}

double binomial_mix(const std::vector<double>& stat_by_m, double p) {
  if (stat_by_m.empty()) throw invalid_parameter("binomial_mix: empty statistic");
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_parameter("p must lie in [0,1]");
  const int m = static_cast<int>(stat_by_m.size()) - 1;
  std::vector<double> w = binomial_weights(m, p);
  // Compensated summation; the weights span many orders of magnitude.
  double sum = 0.0, c = 0.0;
  for (int k = 0; k <= m; ++k) {
    double term = w[k] * stat_by_m[k] - c;
    double t = sum + term;
    c = (t - sum) - term;
    sum = t;
  }
  return sum;
}

TwoPointProfile two_point_profile(const Graph& g, double p, std::uint32_t u,
                                  std::uint64_t replicas, std::uint64_t seed) {
  if (replicas < 1) throw invalid_parameter("two_point_profile: replicas >= 1 required");
  const std::uint32_t n = g.n_vertices();
  const int workers = worker_count(replicas);
  std::vector<std::vector<std::uint64_t>> counts(workers,
                                                 std::vector<std::uint64_t>(n, 0));

  parallel_for(replicas, [&](std::uint64_t r, int worker) {
    thread_local Configuration cfg;
    SplitRng rng(seed, r);
    sample_into(g, p, rng, cfg);
    UnionFind uf(n);
    for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);
    const std::uint32_t ru = uf.find(u);
    auto& slot = counts[worker];
    for (std::uint32_t v = 0; v < n; ++v)
      if (uf.find(v) == ru) ++slot[v];
  });

  TwoPointProfile out;
  out.source = u;
  out.estimate.resize(n);
  double best = 2.0;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint64_t c = 0;
    for (int wkr = 0; wkr < workers; ++wkr) c += counts[wkr][v];
    out.estimate[v] = wilson(c, replicas);
    if (v != u && out.estimate[v].hat < best) {
      best = out.estimate[v].hat;
      out.min_vertex = v;
      out.min_estimate = out.estimate[v];
    }
  }
  return out;
}

}  // namespace perc
