#include "perc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace perc {

namespace {

std::string join_ints(const std::vector<int>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ',';
    out << xs[i];
  }
  return out.str();
}

}  // namespace

void Graph::build_adjacency() {
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw invalid_parameter("edge endpoint out of range");
    if (e.u == e.v) throw invalid_parameter("loop edge in graph construction");
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.resize(2 * edges_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t e = 0; e < edges_.size(); ++e) {
    adj_[cursor[edges_[e].u]++] = {edges_[e].v, e};
    adj_[cursor[edges_[e].v]++] = {edges_[e].u, e};
  }
}

std::uint32_t Graph::min_degree() const {
  std::uint32_t d = degree(0);
  for (std::uint32_t v = 1; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

std::uint32_t Graph::max_degree() const {
  std::uint32_t d = degree(0);
  for (std::uint32_t v = 1; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

bool Graph::is_connected() const {
  if (n_ == 0) return false;
  std::vector<char> seen(n_, 0);
  std::deque<std::uint32_t> queue{0};
  seen[0] = 1;
  std::uint32_t reached = 1;
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (const AdjEntry& a : neighbors(v)) {
      if (!seen[a.vertex]) {
        seen[a.vertex] = 1;
        ++reached;
        queue.push_back(a.vertex);
      }
    }
  }
  return reached == n_;
}

void Graph::check_invariants() const {
  // Simplicity: sort a copy of the normalized edge list, look for repeats.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sorted;
  sorted.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw invalid_parameter("invariant violation: loop edge");
    sorted.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw invalid_parameter("invariant violation: repeated edge");

  if (!is_connected()) throw invalid_parameter("invariant violation: graph not connected");

  if (transitive_) {
    for (std::uint32_t v = 1; v < n_; ++v)
      if (degree(v) != degree(0))
        throw invalid_parameter("invariant violation: transitive graph is not regular");
  }

  if (orbits_) {
    std::vector<char> hit(edges_.size(), 0);
    for (const auto& orbit : *orbits_) {
      for (std::uint32_t e : orbit) {
        if (e >= edges_.size() || hit[e])
          throw invalid_parameter("invariant violation: edge orbits are not a partition");
        hit[e] = 1;
      }
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
      throw invalid_parameter("invariant violation: edge orbits miss an edge");
  }

  // Adjacency consistency with the edge list.
  for (std::uint32_t v = 0; v < n_; ++v) {
    for (const AdjEntry& a : neighbors(v)) {
      const Edge& e = edges_[a.edge];
      bool ok = (e.u == v && e.v == a.vertex) || (e.v == v && e.u == a.vertex);
      if (!ok) throw invalid_parameter("invariant violation: adjacency/edge mismatch");
    }
  }
}

Graph Graph::from_edges(std::uint32_t n_vertices, std::vector<Edge> edges,
                        std::string family, bool transitive,
                        std::optional<EdgeOrbits> orbits, std::string params_json) {
  if (n_vertices == 0) throw invalid_parameter("graph must have at least one vertex");
  Graph g;
  g.n_ = n_vertices;
  g.edges_ = std::move(edges);
  g.transitive_ = transitive;
  g.orbits_ = std::move(orbits);
  g.family_ = std::move(family);
  g.params_json_ = std::move(params_json);
  g.build_adjacency();
  return g;
}

Graph Graph::cycle(int n) {
  if (n < 3) throw invalid_parameter("cycle requires n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i < n; ++i)
    edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + 1) % n)});
  EdgeOrbits orbits(1);
  orbits[0].resize(n);
  std::iota(orbits[0].begin(), orbits[0].end(), 0u);
  return from_edges(n, std::move(edges), "cycle", true, std::move(orbits),
                    "{\"n\":" + std::to_string(n) + "}");
}

Graph Graph::path(int n) {
  if (n < 2) throw invalid_parameter("path requires n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i)
    edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1)});
  return from_edges(n, std::move(edges), "path", n == 2, std::nullopt,
                    "{\"n\":" + std::to_string(n) + "}");
}

Graph Graph::path_pair(int len) {
  if (len < 2) throw invalid_parameter("path_pair requires paths of length >= 2");
  // Two disjoint paths of `len` vertices joined by a single bridge; the bridge
  // is the last edge so activator experiments can address it directly.
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < len; ++i)
    edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + 1)});
  for (int i = 0; i + 1 < len; ++i)
    edges.push_back({static_cast<std::uint32_t>(len + i), static_cast<std::uint32_t>(len + i + 1)});
  edges.push_back({static_cast<std::uint32_t>(len - 1), static_cast<std::uint32_t>(len)});
  return from_edges(2 * len, std::move(edges), "path-pair", false, std::nullopt,
                    "{\"len\":" + std::to_string(len) + "}");
}

Graph Graph::torus(const std::vector<int>& dims) {
  if (dims.empty()) throw invalid_parameter("torus requires at least one dimension");
  for (int d : dims)
    if (d < 2) throw invalid_parameter("torus dimensions must be >= 2");

  std::uint64_t n = 1;
  for (int d : dims) {
    n *= static_cast<std::uint64_t>(d);
    if (n > (1ull << 31)) throw size_limit("torus too large");
  }
  const std::size_t k = dims.size();
  // Row-major vertex index: last axis varies fastest.
  std::vector<std::uint64_t> stride(k, 1);
  for (std::size_t a = k; a-- > 1;) stride[a - 1] = stride[a] * dims[a];

  std::vector<Edge> edges;
  EdgeOrbits orbits(k);
  for (std::size_t a = 0; a < k; ++a) {
    const int len = dims[a];
    for (std::uint64_t v = 0; v < n; ++v) {
      std::uint64_t coord = (v / stride[a]) % len;
      if (len == 2 && coord == 1) continue;  // single edge per antipodal pair
      std::uint64_t next = (coord + 1) % len;
      std::uint64_t w = v + (next - coord) * stride[a];
      orbits[a].push_back(static_cast<std::uint32_t>(edges.size()));
      edges.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w)});
    }
  }
  return from_edges(static_cast<std::uint32_t>(n), std::move(edges), "torus", true,
                    std::move(orbits), "{\"dims\":[" + join_ints(dims) + "]}");
}

Graph Graph::hypercube(int d) {
  if (d < 1) throw invalid_parameter("hypercube requires d >= 1");
  if (d > 24) throw size_limit("hypercube limited to d <= 24");
  const std::uint32_t n = 1u << d;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(d) << (d - 1));
  for (std::uint32_t v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i)
      if (!(v >> i & 1u)) edges.push_back({v, v | (1u << i)});
  EdgeOrbits orbits(1);
  orbits[0].resize(edges.size());
  std::iota(orbits[0].begin(), orbits[0].end(), 0u);
  return from_edges(n, std::move(edges), "hypercube", true, std::move(orbits),
                    "{\"d\":" + std::to_string(d) + "}");
}

Graph Graph::complete(int n) {
  if (n < 2) throw invalid_parameter("complete requires n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(n); ++i)
    for (std::uint32_t j = i + 1; j < static_cast<std::uint32_t>(n); ++j)
      edges.push_back({i, j});
  EdgeOrbits orbits(1);
  orbits[0].resize(edges.size());
  std::iota(orbits[0].begin(), orbits[0].end(), 0u);
  return from_edges(n, std::move(edges), "complete", true, std::move(orbits),
                    "{\"n\":" + std::to_string(n) + "}");
}

Graph Graph::cartesian_product(const Graph& g, const Graph& h) {
  const std::uint64_t n = static_cast<std::uint64_t>(g.n_vertices()) * h.n_vertices();
  if (n > (1ull << 31)) throw size_limit("product too large");
  const std::uint32_t nh = h.n_vertices();
  auto vid = [nh](std::uint32_t a, std::uint32_t b) { return a * nh + b; };

  std::vector<Edge> edges;
  edges.reserve(g.n_edges() * nh + h.n_edges() * g.n_vertices());
  // Lifted G-edges first (grouped by G-edge, then H-vertex), then lifted
  // H-edges (grouped by G-vertex, then H-edge). Row-major, reproducible.
  for (const Edge& e : g.edges())
    for (std::uint32_t b = 0; b < nh; ++b) edges.push_back({vid(e.u, b), vid(e.v, b)});
  for (std::uint32_t a = 0; a < g.n_vertices(); ++a)
    for (const Edge& e : h.edges()) edges.push_back({vid(a, e.u), vid(a, e.v)});

  // Orbit lifting assumes the product automorphism group contains the product
  // of the factor groups; the declared classes are automorphism-invariant
  // even when coarser than the true orbits.
  std::optional<EdgeOrbits> orbits;
  if (g.edge_orbits() && h.edge_orbits()) {
    EdgeOrbits lifted;
    for (const auto& orbit : *g.edge_orbits()) {
      std::vector<std::uint32_t> cls;
      cls.reserve(orbit.size() * nh);
      for (std::uint32_t e : orbit)
        for (std::uint32_t b = 0; b < nh; ++b) cls.push_back(e * nh + b);
      lifted.push_back(std::move(cls));
    }
    const std::uint32_t base = static_cast<std::uint32_t>(g.n_edges() * nh);
    const std::uint32_t mh = static_cast<std::uint32_t>(h.n_edges());
    for (const auto& orbit : *h.edge_orbits()) {
      std::vector<std::uint32_t> cls;
      cls.reserve(orbit.size() * g.n_vertices());
      for (std::uint32_t a = 0; a < g.n_vertices(); ++a)
        for (std::uint32_t e : orbit) cls.push_back(base + a * mh + e);
      lifted.push_back(std::move(cls));
    }
    orbits = std::move(lifted);
  }

  return from_edges(static_cast<std::uint32_t>(n), std::move(edges), "box",
                    g.transitive() && h.transitive(), std::move(orbits),
                    "{\"left\":" + g.params_json() + ",\"left_family\":\"" + g.family_tag() +
                        "\",\"right\":" + h.params_json() + ",\"right_family\":\"" +
                        h.family_tag() + "\"}");
}

Graph Graph::abelian_cayley(const std::vector<int>& moduli,
                            const std::vector<std::vector<int>>& generators) {
  if (moduli.empty()) throw invalid_parameter("abelian_cayley requires moduli");
  for (int m : moduli)
    if (m < 1) throw invalid_parameter("moduli must be positive");
  const std::size_t k = moduli.size();

  std::uint64_t n = 1;
  for (int m : moduli) {
    n *= static_cast<std::uint64_t>(m);
    if (n > (1ull << 31)) throw size_limit("group too large");
  }

  auto normalize = [&](const std::vector<int>& gen) {
    if (gen.size() != k) throw invalid_parameter("generator arity mismatch");
    std::vector<int> r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = ((gen[i] % moduli[i]) + moduli[i]) % moduli[i];
    return r;
  };
  auto negate = [&](const std::vector<int>& r) {
    std::vector<int> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = (moduli[i] - r[i]) % moduli[i];
    return s;
  };

  // Canonical representative per {g, -g} class; coinciding classes would
  // create parallel edges, which violates simplicity.
  std::vector<std::vector<int>> classes;
  for (const auto& gen : generators) {
    std::vector<int> r = normalize(gen);
    std::vector<int> neg = negate(r);
    if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; }))
      throw invalid_parameter("generator is zero mod moduli");
    std::vector<int> canon = std::min(r, neg);
    if (std::find(classes.begin(), classes.end(), canon) != classes.end())
      throw invalid_parameter("coinciding generators produce a parallel edge");
    classes.push_back(std::move(canon));
  }

  std::vector<std::uint64_t> stride(k, 1);
  for (std::size_t a = k; a-- > 1;) stride[a - 1] = stride[a] * moduli[a];
  auto translate = [&](std::uint64_t v, const std::vector<int>& g) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t coord = (v / stride[i]) % moduli[i];
      w += ((coord + g[i]) % moduli[i]) * stride[i];
    }
    return w;
  };

  std::vector<Edge> edges;
  EdgeOrbits orbits(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& gen = classes[c];
    const bool involution = (negate(gen) == gen);
    for (std::uint64_t v = 0; v < n; ++v) {
      std::uint64_t w = translate(v, gen);
      if (involution && w < v) continue;
      orbits[c].push_back(static_cast<std::uint32_t>(edges.size()));
      edges.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(w)});
    }
  }
  std::ostringstream params;
  params << "{\"moduli\":[" << join_ints(moduli) << "],\"generators\":[";
  for (std::size_t i = 0; i < generators.size(); ++i)
    params << (i ? "," : "") << "[" << join_ints(generators[i]) << "]";
  params << "]}";
  return from_edges(static_cast<std::uint32_t>(n), std::move(edges), "abelian_cayley", true,
                    std::move(orbits), params.str());
}

Graph Graph::molecular_chain(int n, double alpha) {
  if (n < 4) throw invalid_parameter("molecular_chain requires n >= 4");
  if (!(alpha > 0.0 && alpha < 0.5))
    throw invalid_parameter("molecular_chain requires alpha in (0, 1/2)");
  const int window = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), alpha)));
  const std::vector<int> sizes = {2 * n, n, n, 2 * n};
  if (window >= n) throw invalid_parameter("inter-block window exceeds block size");

  std::vector<int> offset(sizes.size() + 1, 0);
  for (std::size_t b = 0; b < sizes.size(); ++b) offset[b + 1] = offset[b] + sizes[b];
  const std::uint32_t total = offset.back();

  std::vector<Edge> edges;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int i = 0; i < sizes[b]; ++i)
      for (int j = i + 1; j < sizes[b]; ++j)
        edges.push_back({static_cast<std::uint32_t>(offset[b] + i),
                         static_cast<std::uint32_t>(offset[b] + j)});

  // Deterministic cyclic windows between adjacent blocks: vertex i of the
  // left block connects to `window` consecutive vertices of the right block
  // starting at the proportionally matching index.
  for (std::size_t b = 0; b + 1 < sizes.size(); ++b) {
    const int sl = sizes[b], sr = sizes[b + 1];
    for (int i = 0; i < sl; ++i) {
      const int start = static_cast<int>(static_cast<long long>(i) * sr / sl);
      for (int t = 0; t < window; ++t) {
        const int j = (start + t) % sr;
        edges.push_back({static_cast<std::uint32_t>(offset[b] + i),
                         static_cast<std::uint32_t>(offset[b + 1] + j)});
      }
    }
  }

  std::ostringstream params;
  params << "{\"n\":" << n << ",\"alpha\":" << alpha << "}";
  return from_edges(total, std::move(edges), "molecular_chain", false, std::nullopt,
                    params.str());
}

int eccentricity(const Graph& g, std::uint32_t source) {
  std::vector<int> dist(g.n_vertices(), -1);
  std::deque<std::uint32_t> queue{source};
  dist[source] = 0;
  int ecc = 0;
  std::uint32_t reached = 1;
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (const AdjEntry& a : g.neighbors(v)) {
      if (dist[a.vertex] < 0) {
        dist[a.vertex] = dist[v] + 1;
        ecc = std::max(ecc, dist[a.vertex]);
        ++reached;
        queue.push_back(a.vertex);
      }
    }
  }
  if (reached != g.n_vertices())
    throw invalid_parameter("graph is disconnected: diameter is infinite");
  return ecc;
}

DiameterResult diameter(const Graph& g) {
  const std::uint32_t n = g.n_vertices();
  if (n <= 4096) {
    int best = 0;
    for (std::uint32_t v = 0; v < n; ++v) best = std::max(best, eccentricity(g, v));
    return {best, best, true};
  }
  // Sampled bracket: 64 evenly spread sources.
  const std::uint32_t samples = 64;
  int lower = 0;
  int min_ecc = -1;
  for (std::uint32_t s = 0; s < samples; ++s) {
    std::uint32_t source = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(s) * n / samples);
    int ecc = eccentricity(g, source);
    lower = std::max(lower, ecc);
    min_ecc = min_ecc < 0 ? ecc : std::min(min_ecc, ecc);
  }
  return {lower, 2 * min_ecc, false};
}

}  // namespace perc
