#include "perc/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "perc/errors.hpp"
#include "perc/union_find.hpp"

namespace perc {

namespace {

void require_enumerable(const Graph& g) {
  if (g.n_edges() > static_cast<std::size_t>(kOracleMaxEdges))
    throw size_limit("exact enumeration limited to " + std::to_string(kOracleMaxEdges) +
                     " edges, graph has " + std::to_string(g.n_edges()));
}

// Full truth table of the predicate over all 2^m configurations.
std::vector<char> build_table(const Graph& g, const MaskPredicate& pred) {
  const int m = static_cast<int>(g.n_edges());
  std::vector<char> table(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask)
    table[mask] = pred(g, mask) ? 1 : 0;
  return table;
}

LevelCounts counts_from_table(const std::vector<char>& table, int m) {
  LevelCounts lc;
  lc.m_edges = m;
  lc.counts.assign(m + 1, 0);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask)
    if (table[mask]) ++lc.counts[std::popcount(mask)];
  return lc;
}

}  // namespace

std::uint32_t mask_k1(const Graph& g, std::uint32_t mask) {
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if (mask & (1u << e)) uf.unite(g.edge(e).u, g.edge(e).v);
  std::uint32_t best = 0;
  for (std::uint32_t v = 0; v < g.n_vertices(); ++v)
    if (uf.find(v) == v) best = std::max(best, uf.component_size(v));
  return best;
}

bool mask_connected(const Graph& g, std::uint32_t mask, std::uint32_t u, std::uint32_t v) {
  if (u == v) return true;
  UnionFind uf(g.n_vertices());
  for (std::uint32_t e = 0; e < g.n_edges(); ++e)
    if (mask & (1u << e)) uf.unite(g.edge(e).u, g.edge(e).v);
  return uf.same(u, v);
}

MaskPredicate event_k1_density(double alpha) {
  return [alpha](const Graph& g, std::uint32_t mask) {
    // k1 is an integer, so the density condition is k1 >= ceil(alpha * n).
    const auto t = static_cast<std::uint32_t>(std::ceil(alpha * g.n_vertices() - 1e-9));
    return mask_k1(g, mask) >= t;
  };
}

MaskPredicate event_two_point(std::uint32_t u, std::uint32_t v) {
  return [u, v](const Graph& g, std::uint32_t mask) { return mask_connected(g, mask, u, v); };
}

LevelCounts exact_event(const Graph& g, const MaskPredicate& pred) {
  require_enumerable(g);
  const int m = static_cast<int>(g.n_edges());
  LevelCounts lc;
  lc.m_edges = m;
  lc.counts.assign(m + 1, 0);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < total; ++mask)
    if (pred(g, static_cast<std::uint32_t>(mask)))
      ++lc.counts[std::popcount(static_cast<std::uint32_t>(mask))];
  return lc;
}

double eval(const LevelCounts& lc, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_parameter("p must lie in [0,1]");
  const int m = lc.m_edges;
  // Level weights p^k (1-p)^(m-k) via log space to avoid underflow, with
  // compensated summation across levels.
  double sum = 0.0, c = 0.0;
  for (int k = 0; k <= m; ++k) {
    if (lc.counts[k] == 0) continue;
    double term;
    if (p == 0.0)
      term = (k == 0) ? static_cast<double>(lc.counts[k]) : 0.0;
    else if (p == 1.0)
      term = (k == m) ? static_cast<double>(lc.counts[k]) : 0.0;
    else
      term = static_cast<double>(lc.counts[k]) *
             std::exp(k * std::log(p) + (m - k) * std::log1p(-p));
    const double y = term - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Rational eval_exact(const LevelCounts& lc, const Rational& p) {
  const int m = lc.m_edges;
  const Rational q = 1 - p;
  // Horner-style: sum_k N_k p^k q^(m-k) = q^m * sum_k N_k (p/q)^k when q != 0.
  if (q == 0) return Rational(lc.counts[m]);
  Rational acc = 0;
  for (int k = m; k >= 0; --k) acc = acc * (p / q) + lc.counts[k];
  Rational qm = 1;
  for (int i = 0; i < m; ++i) qm *= q;
  return acc * qm;
}

double derivative(const LevelCounts& lc, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_parameter("p must lie in [0,1]");
  const int m = lc.m_edges;
  const double q = 1.0 - p;
  double sum = 0.0, c = 0.0;
  for (int k = 0; k <= m; ++k) {
    if (lc.counts[k] == 0) continue;
    // d/dp [p^k q^(m-k)] = k p^(k-1) q^(m-k) - (m-k) p^k q^(m-k-1)
    double term = 0.0;
    if (k >= 1) term += lc.counts[k] * k * std::pow(p, k - 1) * std::pow(q, m - k);
    if (m - k >= 1) term -= lc.counts[k] * (m - k) * std::pow(p, k) * std::pow(q, m - k - 1);
    const double y = term - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Rational derivative_exact(const LevelCounts& lc, const Rational& p) {
  const int m = lc.m_edges;
  const Rational q = 1 - p;
  Rational sum = 0;
  for (int k = 0; k <= m; ++k) {
    if (lc.counts[k] == 0) continue;
    Rational pk1 = 1;  // p^(k-1)
    for (int i = 0; i < k - 1; ++i) pk1 *= p;
    Rational qk1 = 1;  // q^(m-k-1)
    for (int i = 0; i < m - k - 1; ++i) qk1 *= q;
    Rational term = 0;
    if (k >= 1) term += Rational(k) * pk1 * qk1 * ((m - k >= 1) ? q : Rational(1));
    if (m - k >= 1) term -= Rational(m - k) * pk1 * ((k >= 1) ? p : Rational(1)) * qk1;
    sum += Rational(lc.counts[k]) * term;
  }
  return sum;
}

double exact_threshold(const LevelCounts& lc, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw invalid_parameter("threshold level must lie in (0,1)");
  const double f0 = eval(lc, 0.0);
  const double f1 = eval(lc, 1.0);
  if (!(f0 < delta && f1 > delta))
    throw no_threshold("event is trivial or does not cross the requested level");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (eval(lc, mid) < delta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RussoResult russo_decomposition(const Graph& g, const MaskPredicate& pred) {
  require_enumerable(g);
  const int m = static_cast<int>(g.n_edges());
  const std::vector<char> table = build_table(g, pred);

  RussoResult out;
  out.event = counts_from_table(table, m);
  out.pivotal.assign(m, LevelCounts{});
  for (int e = 0; e < m; ++e) {
    out.pivotal[e].m_edges = m;
    out.pivotal[e].counts.assign(m + 1, 0);
  }

  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    const int level = std::popcount(mask);
    for (int e = 0; e < m; ++e) {
      const std::uint32_t bit = 1u << e;
      const char with = table[mask | bit];
      const char without = table[mask & ~bit];
      if (without && !with)
        throw not_monotone("event decreases when edge " + std::to_string(e) + " opens");
      // Pivotality ignores the state of e itself; count each configuration
      // once at its own level.
      if (with && !without) ++out.pivotal[e].counts[level];
    }
  }

  // Russo: f'(p) = sum_e P_p(e pivotal). Both sides are polynomials of degree
  // <= m, so exact agreement at m+1 distinct rationals proves identity.
  out.identity_holds = true;
  for (int i = 1; i <= m + 1; ++i) {
    const Rational p(i, m + 2);
    Rational lhs = derivative_exact(out.event, p);
    Rational rhs = 0;
    for (int e = 0; e < m; ++e) {
      // P_p(e pivotal): the per-level counts above enumerate every mask, so
      // each pivotal pair (mask, mask|bit) is counted twice; pivotality is
      // independent of e's own state, hence P = sum_k c_k p^k q^(m-k) works
      // directly with both states of e included.
      rhs += eval_exact(out.pivotal[e], p);
    }
    if (lhs != rhs) {
      out.identity_holds = false;
      break;
    }
  }
  return out;
}

HarrisCheck harris_check(const Graph& g, const MaskPredicate& a, const MaskPredicate& b,
                         const std::vector<Rational>& p_list) {
  require_enumerable(g);
  const MaskPredicate ab = [&a, &b](const Graph& gg, std::uint32_t mask) {
    return a(gg, mask) && b(gg, mask);
  };
  const LevelCounts la = exact_event(g, a);
  const LevelCounts lb = exact_event(g, b);
  const LevelCounts lab = exact_event(g, ab);

  HarrisCheck out;
  out.all_hold = true;
  for (const Rational& p : p_list) {
    HarrisCheck::Row row;
    row.p = p;
    row.p_a = eval_exact(la, p);
    row.p_b = eval_exact(lb, p);
    row.p_ab = eval_exact(lab, p);
    row.holds = row.p_ab >= row.p_a * row.p_b;
    if (!row.holds) out.all_hold = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

InsertionToleranceReport insertion_tolerance_check(
    const Graph& g, const MaskPredicate& a, std::uint32_t f_mask,
    const std::function<std::uint32_t(std::uint32_t)>& f_rule, const Rational& eta,
    const Rational& p) {
  require_enumerable(g);
  const int m = static_cast<int>(g.n_edges());
  const int f_size = std::popcount(f_mask);
  if (f_size == 0) throw invalid_parameter("insertion tolerance needs a nonempty edge set F");
  if (!(eta > 0 && eta <= 1)) throw invalid_parameter("eta must lie in (0,1]");
  if (!(p > 0 && p < 1)) throw invalid_parameter("p must lie in (0,1)");

  const std::vector<char> table = build_table(g, a);
  std::vector<char> plus(table.size(), 0);

  InsertionToleranceReport rep;
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    if (!table[mask]) continue;
    const std::uint32_t fw = f_rule(mask);
    // The rule must pick closed edges of F, at least an eta fraction of it.
    const bool subset_ok = (fw & ~f_mask) == 0 && (fw & mask) == 0;
    const bool size_ok = Rational(std::popcount(fw)) >= eta * f_size;
    if (!subset_ok || !size_ok) {
      rep.precondition_ok = false;
      rep.witness = mask;
      return rep;
    }
    std::uint32_t rest = fw;
    while (rest) {
      const std::uint32_t bit = rest & (~rest + 1);
      plus[mask | bit] = 1;
      rest &= rest - 1;
    }
  }

  LevelCounts la = counts_from_table(table, m);
  LevelCounts lplus = counts_from_table(plus, m);
  rep.p_a = eval_exact(la, p);
  rep.p_a_plus = eval_exact(lplus, p);
  const Rational pf = p * f_size;
  rep.bound = (eta * eta / (1 - p)) * (pf / (pf + 1)) * rep.p_a * rep.p_a;
  rep.inequality_holds = rep.p_a_plus >= rep.bound;
  return rep;
}

}  // namespace perc
