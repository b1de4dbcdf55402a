#include "perc/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "perc/errors.hpp"
#include "perc/parallel.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace perc {

namespace {

std::uint32_t k1_target(const Graph& g, double alpha) {
  return static_cast<std::uint32_t>(std::ceil(alpha * g.n_vertices() - 1e-9));
}

void thin_into(const Graph& g, const Configuration& omega_p, double ratio, SplitRng& rng,
               Configuration& omega_q) {
  if (omega_q.open.size() != g.n_edges())
    omega_q.open.assign(g.n_edges(), 0);
  else
    for (std::uint32_t e : omega_q.open_edges) omega_q.open[e] = 0;
  omega_q.open_edges.clear();
  for (std::uint32_t e : omega_p.open_edges)
    if (rng.next_double() < ratio) {
      omega_q.open[e] = 1;
      omega_q.open_edges.push_back(e);
    }
}

}  // namespace

CoupledPair sample_coupled(const Graph& g, double q, double p, std::uint64_t seed,
                           std::uint64_t stream) {
  if (!(q >= 0.0 && q <= p && p <= 1.0))
    throw invalid_parameter("coupling requires 0 <= q <= p <= 1");
  CoupledPair pair;
  pair.q = q;
  pair.p = p;
  SplitRng rng(seed, stream);
  sample_into(g, p, rng, pair.omega_p);
  SplitRng thin_rng = rng.split(1);
  const double ratio = p > 0.0 ? q / p : 0.0;
  thin_into(g, pair.omega_p, ratio, thin_rng, pair.omega_q);
  return pair;
}

Subgraph induced_subgraph(const Graph& g, const std::vector<std::uint32_t>& vertices) {
  Subgraph s;
  s.vertices = vertices;
  std::vector<std::uint8_t> in(g.n_vertices(), 0);
  for (std::uint32_t v : vertices) in[v] = 1;
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if (in[g.edge(e).u] && in[g.edge(e).v]) s.edges.push_back(e);
  return s;
}

namespace {

// Largest component of the subgraph after keeping each listed edge with
// probability `ratio`; local union-find over the subgraph's vertices.
std::uint32_t thinned_k1(const Graph& g, const Subgraph& s,
                         const std::vector<std::uint32_t>& local_id, UnionFind& uf,
                         double ratio, SplitRng& rng) {
  uf.reset();
  if (ratio >= 1.0) {
    for (std::uint32_t e : s.edges) uf.unite(local_id[g.edge(e).u], local_id[g.edge(e).v]);
  } else if (ratio > 0.0) {
    const double log1mr = std::log1p(-ratio);
    std::uint64_t i = rng.geometric_skip(log1mr);
    while (i < s.edges.size()) {
      const Edge& e = g.edge(s.edges[i]);
      uf.unite(local_id[e.u], local_id[e.v]);
      i += 1 + rng.geometric_skip(log1mr);
    }
  }
  std::uint32_t best = 1;
  for (std::uint32_t v = 0; v < uf.n(); ++v)
    if (uf.find(v) == v) best = std::max(best, uf.component_size(v));
  return best;
}

}  // namespace

SandcastleReport sandcastle_score(const Graph& g, const Subgraph& s, double q, double p,
                                  double alpha, std::uint64_t replicas, std::uint64_t seed,
                                  double beta, double score_threshold) {
  if (!(q >= 0.0 && q <= p && p > 0.0 && p <= 1.0))
    throw invalid_parameter("sandcastle scoring requires 0 <= q <= p, p > 0");
  if (s.vertices.empty()) throw invalid_parameter("empty subgraph");
  if (replicas < 1) throw invalid_parameter("replicas >= 1 required");

  std::vector<std::uint32_t> local_id(g.n_vertices(), 0);
  for (std::uint32_t i = 0; i < s.vertices.size(); ++i) local_id[s.vertices[i]] = i;

  // Connectivity of S itself (fully open) is a precondition.
  {
    UnionFind uf(static_cast<std::uint32_t>(s.vertices.size()));
    for (std::uint32_t e : s.edges) uf.unite(local_id[g.edge(e).u], local_id[g.edge(e).v]);
    if (uf.component_size(0) != s.vertices.size())
      throw invalid_parameter("subgraph is not connected");
  }

  const double ratio = q / p;
  const std::uint32_t target = k1_target(g, alpha);
  const int workers = worker_count(replicas);
  std::vector<std::uint64_t> acc(workers, 0);
  parallel_for(replicas, [&](std::uint64_t r, int worker) {
    thread_local UnionFind uf(0);
    if (uf.n() != s.vertices.size()) uf = UnionFind(static_cast<std::uint32_t>(s.vertices.size()));
    SplitRng rng(seed, r);
    if (thinned_k1(g, s, local_id, uf, ratio, rng) < target) ++acc[worker];
  });
  std::uint64_t succ = 0;
  for (int w = 0; w < workers; ++w) succ += acc[w];

  SandcastleReport rep;
  rep.subgraph_id = s.vertices.front();
  rep.density = static_cast<double>(s.vertices.size()) / g.n_vertices();
  rep.score = wilson(succ, replicas);
  rep.is_sandcastle = rep.density >= beta && rep.score.lo >= score_threshold;
  return rep;
}

SandcastleFrequency sandcastle_frequency(const Graph& g, double p, double q, double alpha,
                                         double beta, std::uint64_t replicas,
                                         std::uint64_t seed, std::uint64_t inner_replicas,
                                         std::vector<std::uint32_t> probes,
                                         const SandcastleRow& row) {
  if (!(q >= 0.0 && q <= p && p > 0.0 && p <= 1.0))
    throw invalid_parameter("sandcastle frequency requires 0 <= q <= p, p > 0");
  const std::uint32_t n = g.n_vertices();
  if (probes.empty()) {
    // Default: 8 evenly spread probe vertices.
    const std::uint32_t count = std::min<std::uint32_t>(8, n);
    for (std::uint32_t i = 0; i < count; ++i)
      probes.push_back(static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) * n / count));
  }
  const std::uint32_t alpha_target = k1_target(g, alpha);
  const std::uint32_t beta_target = k1_target(g, beta);
  const double ratio = q / p;
  // Inner verdict: Wilson lower bound of the shatter score against 1/2.
  const std::uint64_t need = [&] {
    for (std::uint64_t s = 0; s <= inner_replicas; ++s)
      if (wilson(s, inner_replicas).lo >= 0.5) return s;
    return inner_replicas + 1;
  }();

  const int workers = worker_count(replicas);
  std::vector<std::vector<std::uint64_t>> hits(workers,
                                               std::vector<std::uint64_t>(probes.size(), 0));
  std::vector<std::uint64_t> k2p_hits(workers, 0), k2q_hits(workers, 0);

  parallel_for(replicas, [&](std::uint64_t r, int worker) {
    thread_local Configuration cfg;
    thread_local UnionFind uf(0);
    if (uf.n() != n) uf = UnionFind(n);
    SplitRng rng(seed, r);
    sample_into(g, p, rng, cfg);
    uf.reset();
    for (std::uint32_t e : cfg.open_edges) uf.unite(g.edge(e).u, g.edge(e).v);
    // k2 of omega_p.
    std::uint32_t best = 0, second = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (uf.find(v) != v) continue;
      const std::uint32_t sz = uf.component_size(v);
      if (sz > best) {
        second = best;
        best = sz;
      } else if (sz > second) {
        second = sz;
      }
    }
    if (second >= beta_target) ++k2p_hits[worker];

    // Coupled omega_q for the second-cluster estimate at q.
    thread_local Configuration cfq;
    thread_local UnionFind ufq(0);
    if (ufq.n() != n) ufq = UnionFind(n);
    SplitRng thin_rng = rng.split(1);
    thin_into(g, cfg, ratio, thin_rng, cfq);
    if (k1_k2(g, cfq, ufq).second >= alpha_target) ++k2q_hits[worker];

    // Score each probe's cluster.
    SplitRng inner_rng = rng.split(2);
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      const std::uint32_t root = uf.find(probes[pi]);
      const double cluster_density = static_cast<double>(uf.component_size(root)) / n;
      if (uf.component_size(root) < beta_target) {  // density < beta
        if (row) row(r, probes[pi], cluster_density, 0, false);
        continue;
      }
      thread_local std::vector<std::uint32_t> members;
      members.clear();
      for (std::uint32_t v = 0; v < n; ++v)
        if (uf.find(v) == root) members.push_back(v);
      thread_local std::vector<std::uint32_t> local_id;
      local_id.assign(n, 0);
      for (std::uint32_t i = 0; i < members.size(); ++i) local_id[members[i]] = i;
      thread_local std::vector<std::uint32_t> cluster_edges;
      cluster_edges.clear();
      for (std::uint32_t e : cfg.open_edges)
        if (uf.find(g.edge(e).u) == root) cluster_edges.push_back(e);

      Subgraph s;
      s.vertices = members;
      s.edges = cluster_edges;
      UnionFind inner_uf(static_cast<std::uint32_t>(members.size()));
      std::uint64_t shatters = 0;
      for (std::uint64_t ir = 0; ir < inner_replicas; ++ir)
        if (thinned_k1(g, s, local_id, inner_uf, ratio, inner_rng) < alpha_target) ++shatters;
      const bool verdict = shatters >= need;
      if (verdict) ++hits[worker][pi];
      if (row) row(r, probes[pi], cluster_density, shatters, verdict);
    }
  });

  SandcastleFrequency out;
  out.probes = probes;
  std::uint64_t k2p = 0, k2q = 0;
  for (int w = 0; w < workers; ++w) {
    k2p += k2p_hits[w];
    k2q += k2q_hits[w];
  }
  out.k2_p = wilson(k2p, replicas);
  out.k2_q = wilson(k2q, replicas);
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    std::uint64_t h = 0;
    for (int w = 0; w < workers; ++w) h += hits[w][pi];
    out.frequency.push_back(wilson(h, replicas));
    out.sup_frequency = std::max(out.sup_frequency, out.frequency.back().hat);
  }
  const double rr = static_cast<double>(replicas);
  const double se_p = std::sqrt(out.k2_p.hat * (1.0 - out.k2_p.hat) / rr);
  const double se_q = std::sqrt(out.k2_q.hat * (1.0 - out.k2_q.hat) / rr);
  out.rhs = beta * (out.k2_p.hat - 4.0 * out.k2_q.hat);
  out.rhs_sigma = beta * std::sqrt(se_p * se_p + 16.0 * se_q * se_q);
  return out;
}

Proportion localization_probability(const Graph& g,
                                    const std::vector<std::uint32_t>& h_vertices, double q,
                                    double beta, std::uint64_t replicas,
                                    std::uint64_t seed) {
  const std::uint32_t n = g.n_vertices();
  std::vector<std::uint8_t> blocked(n, 0);
  for (std::uint32_t v : h_vertices) blocked[v] = 1;
  // H-bar: every edge with at least one endpoint in V(H); keep the rest.
  std::vector<std::uint32_t> kept;
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if (!blocked[g.edge(e).u] && !blocked[g.edge(e).v]) kept.push_back(e);

  const std::uint32_t target = k1_target(g, beta);
  const int workers = worker_count(replicas);
  std::vector<std::uint64_t> acc(workers, 0);
  parallel_for(replicas, [&](std::uint64_t r, int worker) {
    thread_local UnionFind uf(0);
    if (uf.n() != n) uf = UnionFind(n);
    uf.reset();
    SplitRng rng(seed, r);
    if (q >= 1.0) {
      for (std::uint32_t e : kept) uf.unite(g.edge(e).u, g.edge(e).v);
    } else if (q > 0.0) {
      const double log1mq = std::log1p(-q);
      std::uint64_t i = rng.geometric_skip(log1mq);
      while (i < kept.size()) {
        const Edge& e = g.edge(kept[i]);
        uf.unite(e.u, e.v);
        i += 1 + rng.geometric_skip(log1mq);
      }
    }
    std::uint32_t best = 1;
    for (std::uint32_t v = 0; v < n; ++v)
      if (uf.find(v) == v) best = std::max(best, uf.component_size(v));
    if (best >= target) ++acc[worker];
  });
  std::uint64_t succ = 0;
  for (int w = 0; w < workers; ++w) succ += acc[w];
  return wilson(succ, replicas);
}

Proportion activator_probability(const Graph& g, const std::vector<std::uint32_t>& h_edges,
                                 double alpha, double p, std::uint64_t replicas,
                                 std::uint64_t seed) {
  const std::uint32_t n = g.n_vertices();
  const std::uint32_t target = k1_target(g, alpha);
  const int workers = worker_count(replicas);
  std::vector<std::uint64_t> acc(workers, 0);
  parallel_for(replicas, [&](std::uint64_t r, int worker) {
    thread_local Configuration cfg;
    thread_local UnionFind uf(0);
    if (uf.n() != n) uf = UnionFind(n);
    SplitRng rng(seed, r);
    sample_into(g, p, rng, cfg);
    if (k1_k2(g, cfg, uf).first >= target) return;  // omega already in A
    // Extend the same union-find with H.
    for (std::uint32_t e : h_edges) uf.unite(g.edge(e).u, g.edge(e).v);
    std::uint32_t best = 1;
    for (std::uint32_t v = 0; v < n; ++v)
      if (uf.find(v) == v) best = std::max(best, uf.component_size(v));
    if (best >= target) ++acc[worker];
  });
  std::uint64_t succ = 0;
  for (int w = 0; w < workers; ++w) succ += acc[w];
  return wilson(succ, replicas);
}

}  // namespace perc
