#include "perc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "perc/errors.hpp"
#include "perc/parallel.hpp"
#include "perc/percolation.hpp"
#include "perc/rng.hpp"
#include "perc/union_find.hpp"

namespace perc {

namespace {

std::uint32_t k1_target(const Graph& g, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw invalid_parameter("alpha must lie in (0,1]");
  return static_cast<std::uint32_t>(std::ceil(alpha * g.n_vertices() - 1e-9));
}

}  // namespace

SweepPool build_sweep_pool(const Graph& g, double alpha, std::uint64_t replicas,
                           std::uint64_t seed) {
  if (replicas < 1) throw invalid_parameter("sweep pool needs at least one replica");
  const std::uint32_t target = k1_target(g, alpha);
  const std::size_t m = g.n_edges();
  const std::uint32_t n = g.n_vertices();

  SweepPool pool;
  pool.alpha = alpha;
  pool.k1_threshold = target;
  pool.m_edges = m;
  pool.critical.assign(replicas, static_cast<std::uint32_t>(m + 1));

  parallel_for(replicas, [&](std::uint64_t r, int) {
    // Partial Fisher-Yates with undo: only the shuffled prefix is touched, so
    // early stopping at the critical edge count keeps each sweep cheap.
    thread_local std::vector<std::uint32_t> perm;
    thread_local std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps;
    if (perm.size() != m) {
      perm.resize(m);
      std::iota(perm.begin(), perm.end(), 0u);
    }
    swaps.clear();
    SplitRng rng(seed, r);
    UnionFind uf(n);
    std::uint32_t k1 = 1;
    if (target <= 1) {
      pool.critical[r] = 0;
      return;
    }
    for (std::uint32_t t = 0; t < m; ++t) {
      const std::uint32_t j = t + rng.next_below(static_cast<std::uint32_t>(m - t));
      if (j != t) {
        std::swap(perm[t], perm[j]);
        swaps.emplace_back(t, j);
      }
      const Edge& e = g.edge(perm[t]);
      const std::uint32_t ra = uf.find(e.u), rb = uf.find(e.v);
      if (ra != rb) {
        const std::uint32_t s = uf.component_size(ra) + uf.component_size(rb);
        uf.unite(ra, rb);
        k1 = std::max(k1, s);
        if (k1 >= target) {
          pool.critical[r] = t + 1;
          break;
        }
      }
    }
    for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
      std::swap(perm[it->first], perm[it->second]);
  });
  return pool;
}

PoolEstimate pool_eval(const SweepPool& pool, double p, double z) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_parameter("p must lie in [0,1]");
  const TruncatedBinomial tb(static_cast<std::int64_t>(pool.m_edges), p);
  double sum = 0.0, sumsq = 0.0;
  for (std::uint32_t c : pool.critical) {
    // P(Binomial(m,p) >= c): the per-sweep mixed indicator.
    const double y = 1.0 - tb.cdf(static_cast<std::int64_t>(c) - 1);
    sum += y;
    sumsq += y * y;
  }
  const double r = static_cast<double>(pool.critical.size());
  PoolEstimate out;
  out.hat = sum / r;
  const double var = std::max(0.0, sumsq / r - out.hat * out.hat);
  const double se = std::sqrt(var / r);
  out.lo = std::max(0.0, out.hat - z * se);
  out.hi = std::min(1.0, out.hat + z * se);
  return out;
}

EmpiricalCurve estimate_curve(const Graph& g, double alpha,
                              const std::vector<double>& p_grid,
                              std::uint64_t replicas_per_point, std::uint64_t seed,
                              CurveMethod method) {
  if (p_grid.empty()) throw invalid_parameter("curve grid is empty");
  for (std::size_t i = 0; i + 1 < p_grid.size(); ++i)
    if (!(p_grid[i] < p_grid[i + 1])) throw invalid_parameter("curve grid must be increasing");
  if (replicas_per_point < 1) throw invalid_parameter("replicas_per_point >= 1 required");
  const std::uint32_t target = k1_target(g, alpha);
  const std::size_t k = p_grid.size();

  EmpiricalCurve curve;
  curve.alpha = alpha;
  curve.p_grid = p_grid;
  curve.successes.assign(k, 0);
  curve.trials.assign(k, replicas_per_point);

  if (method == CurveMethod::sweep_pool) {
    // One pool of sweeps serves every grid point: per replica draw an edge
    // count from Binomial(|E|, p_j) and compare against the sweep's critical
    // count, which realizes a genuine Bernoulli(f(p_j)) trial.
    const SweepPool pool = build_sweep_pool(g, alpha, replicas_per_point, seed);
    std::vector<TruncatedBinomial> tb;
    tb.reserve(k);
    for (double p : p_grid) tb.emplace_back(static_cast<std::int64_t>(pool.m_edges), p);
    const int workers = worker_count(replicas_per_point);
    std::vector<std::vector<std::uint64_t>> acc(workers, std::vector<std::uint64_t>(k, 0));
    parallel_for(replicas_per_point, [&](std::uint64_t r, int worker) {
      SplitRng rng = SplitRng(seed, r).split(1);
      auto& slot = acc[worker];
      for (std::size_t j = 0; j < k; ++j)
        if (tb[j].sample(rng.next_double()) >= static_cast<std::int64_t>(pool.critical[r]))
          ++slot[j];
    });
    for (int w = 0; w < workers; ++w)
      for (std::size_t j = 0; j < k; ++j) curve.successes[j] += acc[w][j];
  } else {
    const int workers = worker_count(replicas_per_point);
    std::vector<std::vector<std::uint64_t>> acc(workers, std::vector<std::uint64_t>(k, 0));
    parallel_for(replicas_per_point, [&](std::uint64_t r, int worker) {
      thread_local Configuration cfg;
      thread_local UnionFind uf(0);
      if (uf.n() != g.n_vertices()) uf = UnionFind(g.n_vertices());
      auto& slot = acc[worker];
      for (std::size_t j = 0; j < k; ++j) {
        SplitRng rng = SplitRng(seed, r).split(j);
        sample_into(g, p_grid[j], rng, cfg);
        if (k1_k2(g, cfg, uf).first >= target) ++slot[j];
      }
    });
    for (int w = 0; w < workers; ++w)
      for (std::size_t j = 0; j < k; ++j) curve.successes[j] += acc[w][j];
  }

  std::vector<double> hat(k), weight(k);
  curve.ci_lo.resize(k);
  curve.ci_hi.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Proportion pr = wilson(curve.successes[j], curve.trials[j]);
    hat[j] = pr.hat;
    weight[j] = static_cast<double>(curve.trials[j]);
    curve.ci_lo[j] = pr.lo;
    curve.ci_hi[j] = pr.hi;
  }
  curve.f_hat = isotonic_regression(hat, weight);
  for (std::size_t j = 0; j < k; ++j) {
    // PAV projection: never moves a point beyond its own interval width.
    const double width = curve.ci_hi[j] - curve.ci_lo[j];
    if (std::abs(curve.f_hat[j] - hat[j]) > width + 1e-12)
      throw resolution_error("isotonic fit moved an estimate beyond its interval width");
    curve.ci_lo[j] = std::min(curve.ci_lo[j], curve.f_hat[j]);
    curve.ci_hi[j] = std::max(curve.ci_hi[j], curve.f_hat[j]);
  }
  return curve;
}

double curve_value(const EmpiricalCurve& curve, double p) {
  const auto& grid = curve.p_grid;
  if (p <= grid.front()) return curve.f_hat.front();
  if (p >= grid.back()) return curve.f_hat.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), p);
  const std::size_t j = static_cast<std::size_t>(it - grid.begin());
  const double t = (p - grid[j - 1]) / (grid[j] - grid[j - 1]);
  return curve.f_hat[j - 1] + t * (curve.f_hat[j] - curve.f_hat[j - 1]);
}

ThresholdEstimate threshold(const Graph& g, double alpha, double delta, double tolerance,
                            std::uint64_t seed, const ThresholdOptions& opts) {
  if (!(delta > 0.0 && delta < 1.0)) throw invalid_parameter("delta must lie in (0,1)");
  if (!(tolerance > 0.0)) throw invalid_parameter("tolerance must be positive");
  const std::uint32_t target = k1_target(g, alpha);
  const std::uint32_t n = g.n_vertices();

  ThresholdEstimate est;
  est.alpha = alpha;
  est.delta = delta;
  double lo = 0.0, hi = 1.0;
  std::uint64_t probe_index = 0;

  while (hi - lo > tolerance) {
    const double p = 0.5 * (lo + hi);
    SplitRng probe_rng(seed, probe_index++);
    Configuration cfg;
    UnionFind uf(n);
    std::uint64_t succ = 0, tried = 0;
    int verdict = 0;  // -1: f(p) < delta, +1: f(p) > delta, 0: undecided
    std::uint64_t batch = 16;  // grows geometrically; decisive probes exit early
    while (tried < opts.max_replicas_per_probe) {
      for (std::uint64_t b = 0; b < batch; ++b) {
        sample_into(g, p, probe_rng, cfg);
        if (k1_k2(g, cfg, uf).first >= target) ++succ;
      }
      tried += batch;
      batch = std::min(batch * 2, opts.batch);
      const Proportion pr = wilson(succ, tried, opts.z);
      if (pr.hi < delta) {
        verdict = -1;
        break;
      }
      if (pr.lo > delta) {
        verdict = +1;
        break;
      }
    }
    est.replicas_used += tried;
    if (verdict == 0) {
      // Budget exhausted with the CI straddling delta: report the widest
      // honest bracket around the undecided probe.
      est.inconclusive = true;
      est.p_lo = lo;
      est.p_hi = hi;
      est.p_hat = p;
      return est;
    }
    (verdict < 0 ? lo : hi) = p;
  }
  est.p_lo = lo;
  est.p_hi = hi;
  est.p_hat = 0.5 * (lo + hi);
  return est;
}

namespace {

// Smallest p in [0,1] with g(p) >= level, assuming g nondecreasing; returns
// +-1 sentinel brackets when the level is never/always reached.
double invert_monotone(const std::function<double(double)>& fn, double level,
                       double tolerance, bool& ok) {
  ok = true;
  if (fn(1.0) < level) {
    ok = false;
    return 1.0;
  }
  if (fn(0.0) >= level) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (fn(mid) < level ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ThresholdEstimate pool_threshold(const SweepPool& pool, double alpha, double delta,
                                 double tolerance) {
  ThresholdEstimate est;
  est.alpha = alpha;
  est.delta = delta;
  est.replicas_used = pool.critical.size();
  bool ok_hat = true, ok_lo = true, ok_hi = true;
  est.p_hat =
      invert_monotone([&](double p) { return pool_eval(pool, p).hat; }, delta, tolerance, ok_hat);
  // Crossing the upper CI curve first gives the lower p bracket and vice versa.
  est.p_lo =
      invert_monotone([&](double p) { return pool_eval(pool, p).hi; }, delta, tolerance, ok_lo);
  est.p_hi =
      invert_monotone([&](double p) { return pool_eval(pool, p).lo; }, delta, tolerance, ok_hi);
  est.inconclusive = !(ok_hat && ok_lo && ok_hi);
  return est;
}

}  // namespace

RatioEstimate sharp_density_ratio(const SweepPool& pool, const Graph& g, double beta,
                                  double delta, double tolerance) {
  if (!(delta > 0.0 && delta <= 0.5)) throw invalid_parameter("delta must lie in (0,1/2]");
  (void)g;
  RatioEstimate out;
  out.beta = beta;
  out.delta = delta;
  out.low = pool_threshold(pool, beta, delta, tolerance);
  out.high = pool_threshold(pool, beta, 1.0 - delta, tolerance);
  out.inconclusive = out.low.inconclusive || out.high.inconclusive;
  if (out.low.p_hat > 0.0) out.ratio = out.high.p_hat / out.low.p_hat;
  out.ratio_lo = out.low.p_hi > 0.0 ? out.high.p_lo / out.low.p_hi : 1.0;
  out.ratio_hi = out.low.p_lo > 0.0 ? out.high.p_hi / out.low.p_lo : HUGE_VAL;
  out.ratio_lo = std::max(1.0, out.ratio_lo);
  return out;
}

RatioEstimate sharp_density_ratio(const Graph& g, double beta, double delta,
                                  double tolerance, std::uint64_t seed,
                                  std::uint64_t replicas) {
  const SweepPool pool = build_sweep_pool(g, beta, replicas, seed);
  return sharp_density_ratio(pool, g, beta, delta, tolerance);
}

SupercriticalReport epsilon_supercritical(const Graph& g, double p, double epsilon,
                                          std::uint64_t seed, std::uint64_t max_replicas) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw invalid_parameter("epsilon must lie in (0,1)");
  SupercriticalReport rep;
  rep.size_ok = static_cast<double>(g.n_vertices()) >= 2.0 / (epsilon * epsilon * epsilon);
  if (!rep.size_ok) return rep;  // value = false by the size clause

  const std::uint32_t target = k1_target(g, epsilon);
  const double q = (1.0 - epsilon) * p;
  Configuration cfg;
  UnionFind uf(g.n_vertices());
  std::uint64_t succ = 0, tried = 0;
  const std::uint64_t batch = 256;
  while (tried < max_replicas) {
    for (std::uint64_t b = 0; b < batch; ++b) {
      SplitRng rng(seed, tried + b);
      sample_into(g, q, rng, cfg);
      if (k1_k2(g, cfg, uf).first >= target) ++succ;
    }
    tried += batch;
    rep.estimate = wilson(succ, tried);
    if (rep.estimate.lo >= epsilon) {
      rep.value = true;
      rep.replicas_used = tried;
      return rep;
    }
    if (rep.estimate.hi < epsilon) {
      rep.value = false;
      rep.replicas_used = tried;
      return rep;
    }
  }
  rep.inconclusive = true;
  rep.replicas_used = tried;
  return rep;
}

double typical_density(const Graph& g, double p, double epsilon, std::uint64_t replicas,
                       std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw invalid_parameter("epsilon must lie in (0,1)");
  if (static_cast<double>(replicas) < 1.0 / (epsilon * epsilon))
    throw invalid_parameter("typical_density needs at least 1/epsilon^2 replicas");
  const std::uint32_t n = g.n_vertices();
  std::vector<std::uint32_t> k1s(replicas, 0);
  parallel_for(replicas, [&](std::uint64_t r, int) {
    thread_local Configuration cfg;
    thread_local UnionFind uf(0);
    if (uf.n() != n) uf = UnionFind(n);
    SplitRng rng(seed, r);
    sample_into(g, p, rng, cfg);
    k1s[r] = k1_k2(g, cfg, uf).first;
  });
  std::sort(k1s.begin(), k1s.end(), std::greater<>());
  // Largest sampled density reached by at least an epsilon fraction: the
  // ceil(eps*R)-th largest sample.
  const std::uint64_t k =
      static_cast<std::uint64_t>(std::ceil(epsilon * static_cast<double>(replicas) - 1e-9));
  return static_cast<double>(k1s[k - 1]) / n;
}

QSet q_set_and_interval(const EmpiricalCurve& curve, double beta, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw invalid_parameter("delta must lie in (0,1/2)");
  if (std::abs(curve.alpha - beta) > 1e-12)
    throw invalid_parameter("curve was estimated for a different density threshold");
  const std::size_t k = curve.p_grid.size();
  if (k < 2) throw resolution_error("curve too coarse");
  if (curve.f_hat.front() > delta || curve.f_hat.back() < 1.0 - delta)
    throw resolution_error("curve does not cover the interval I");

  auto invert = [&](double level) {
    for (std::size_t j = 1; j < k; ++j) {
      if (curve.f_hat[j] >= level) {
        const double f0 = curve.f_hat[j - 1], f1 = curve.f_hat[j];
        if (f1 <= f0) return curve.p_grid[j];
        const double t = std::clamp((level - f0) / (f1 - f0), 0.0, 1.0);
        return curve.p_grid[j - 1] + t * (curve.p_grid[j] - curve.p_grid[j - 1]);
      }
    }
    return curve.p_grid.back();
  };

  QSet out;
  out.i_lo = invert(delta);
  out.i_hi = invert(1.0 - delta);
  out.bound = 4.0 / delta;

  // Node derivatives by centered differences with a bandwidth of 3 cells.
  std::vector<double> deriv(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t a = j >= 3 ? j - 3 : 0;
    const std::size_t b = std::min(j + 3, k - 1);
    deriv[j] = (curve.f_hat[b] - curve.f_hat[a]) / (curve.p_grid[b] - curve.p_grid[a]);
  }

  std::size_t cells_in_i = 0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const double lo = std::max(curve.p_grid[j], out.i_lo);
    const double hi = std::min(curve.p_grid[j + 1], out.i_hi);
    if (hi <= lo) continue;
    ++cells_in_i;
    const double pm = 0.5 * (curve.p_grid[j] + curve.p_grid[j + 1]);
    const double dm = 0.5 * (deriv[j] + deriv[j + 1]);
    if (pm * dm <= out.bound) {
      // Merge adjacent qualifying cells.
      if (!out.cells.empty() && std::abs(out.cells.back().second - lo) < 1e-15)
        out.cells.back().second = hi;
      else
        out.cells.emplace_back(lo, hi);
      out.measure += hi - lo;
    }
  }
  if (cells_in_i < 16)
    throw resolution_error("curve too coarse: fewer than 16 grid cells inside I");
  return out;
}

SprinklingSequence sprinkling_sequence(const EmpiricalCurve& curve, const QSet& q_set,
                                       int count) {
  if (q_set.cells.empty()) throw invalid_parameter("Q is empty");
  if (count < 1) throw invalid_parameter("count >= 1 required");
  if (count > 25) throw resolution_error("trisection depth exceeds the discretization");
  const double L = q_set.measure;

  // phi: [0,1] -> Q with measure([0, phi(x)] ∩ Q) = x * L, piecewise-linear
  // over the grid cells that make up Q.
  auto phi = [&](double x) {
    double t = std::clamp(x, 0.0, 1.0) * L;
    for (const auto& [lo, hi] : q_set.cells) {
      const double len = hi - lo;
      if (t <= len) return lo + t;
      t -= len;
    }
    return q_set.cells.back().second;
  };
  auto f = [&](double x) { return curve_value(curve, phi(x)); };

  SprinklingSequence seq;
  seq.q_set_measure = L;
  double x = 0.0;
  seq.p_seq.push_back(phi(x));
  seq.f_at_p.push_back(f(x));
  for (int n = 0; n + 1 < count; ++n) {
    const double step = std::pow(3.0, -(n + 1));
    const double x1 = x + step, x2 = x + 2 * step, x3 = x + 3 * step;
    // Interpolation rounding must not decide exact ties; they take the
    // first branch.
    x = (f(x2) - f(x1) <= f(x3) - f(x2) + 1e-12) ? x1 : x2;
    seq.p_seq.push_back(phi(x));
    seq.f_at_p.push_back(f(x));
  }

  // Both guarantees hold by construction; verify with float slack.
  for (int n = 0; n + 1 < count; ++n) {
    const double p_gap = seq.p_seq[n + 1] - seq.p_seq[n];
    if (p_gap < std::pow(3.0, -(n + 1)) * L - 1e-9)
      throw resolution_error("sprinkling sequence violates the spacing guarantee");
    const double f_gap = seq.f_at_p[n + 1] - seq.f_at_p[n];
    if (f_gap > std::pow(2.0, -n) + 1e-9)
      throw resolution_error("sprinkling sequence violates the f-increment guarantee");
  }
  return seq;
}

}  // namespace perc
