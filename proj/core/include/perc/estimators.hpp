#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "perc/graph.hpp"
#include "perc/stats.hpp"

namespace perc {

/// Estimated f(p) = P_p(density of K1 >= alpha) over a grid.
struct EmpiricalCurve {
  double alpha = 0.0;
  std::vector<double> p_grid;
  std::vector<std::uint64_t> successes;
  std::vector<std::uint64_t> trials;
  std::vector<double> f_hat;  // isotonic-regressed, nondecreasing
  std::vector<double> ci_lo;  // Wilson bounds, widened to contain f_hat
  std::vector<double> ci_hi;
};

struct ThresholdEstimate {
  double alpha = 0.0;
  double delta = 0.0;
  double p_hat = 0.0;
  double p_lo = 0.0;
  double p_hi = 1.0;
  std::uint64_t replicas_used = 0;
  bool inconclusive = false;
};

struct RatioEstimate {
  double beta = 0.0;
  double delta = 0.0;
  double ratio = 1.0;
  double ratio_lo = 1.0;
  double ratio_hi = 1.0;
  ThresholdEstimate low;   // p_c(beta, delta)
  ThresholdEstimate high;  // p_c(beta, 1-delta)
  bool inconclusive = false;
};

struct SupercriticalReport {
  bool size_ok = false;       // |V| >= 2 eps^-3
  bool value = false;         // verdict (false when inconclusive)
  bool inconclusive = false;  // CI straddles eps at budget exhaustion
  Proportion estimate;        // P_{(1-eps)p}(density of K1 >= eps)
  std::uint64_t replicas_used = 0;
};

struct QSet {
  double i_lo = 0.0;  // I = [p_c(beta,delta), p_c(beta,1-delta)] from the curve
  double i_hi = 0.0;
  double bound = 0.0;  // 4/delta
  std::vector<std::pair<double, double>> cells;  // Q as clipped grid cells
  double measure = 0.0;
};

struct SprinklingSequence {
  double q_set_measure = 0.0;
  std::vector<double> p_seq;   // increasing
  std::vector<double> f_at_p;  // matched curve values
};

/// Pool of permutation sweeps for the monotone event {k1 >= t}: because the
/// event is monotone in the number of open edges, each sweep is summarized by
/// the first edge count at which it holds.
struct SweepPool {
  double alpha = 0.0;
  std::uint32_t k1_threshold = 0;
  std::uint64_t m_edges = 0;
  std::vector<std::uint32_t> critical;  // per sweep; m_edges+1 means "never"
};

SweepPool build_sweep_pool(const Graph& g, double alpha, std::uint64_t replicas,
                           std::uint64_t seed);

/// Binomially mixed pool estimate of f(p) with a normal-approximation CI over
/// the per-sweep mixed indicators.
struct PoolEstimate {
  double hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};
PoolEstimate pool_eval(const SweepPool& pool, double p, double z = 1.959963984540054);

enum class CurveMethod { direct, sweep_pool };

EmpiricalCurve estimate_curve(const Graph& g, double alpha,
                              const std::vector<double>& p_grid,
                              std::uint64_t replicas_per_point, std::uint64_t seed,
                              CurveMethod method = CurveMethod::sweep_pool);

/// Piecewise-linear interpolation of f_hat; clamps outside the grid.
double curve_value(const EmpiricalCurve& curve, double p);

struct ThresholdOptions {
  std::uint64_t batch = 1024;
  std::uint64_t max_replicas_per_probe = 1 << 16;
  double z = 1.959963984540054;
};

/// Adaptive stochastic bisection for p_c(alpha, delta): each probe samples
/// until its Wilson interval excludes delta or the per-probe budget runs out.
ThresholdEstimate threshold(const Graph& g, double alpha, double delta, double tolerance,
                            std::uint64_t seed, const ThresholdOptions& opts = {});

/// p_c(beta, 1-delta) / p_c(beta, delta), both thresholds read off one shared
/// sweep pool of `replicas` sweeps.
RatioEstimate sharp_density_ratio(const Graph& g, double beta, double delta,
                                  double tolerance, std::uint64_t seed,
                                  std::uint64_t replicas = 400);
RatioEstimate sharp_density_ratio(const SweepPool& pool, const Graph& g, double beta,
                                  double delta, double tolerance);

SupercriticalReport epsilon_supercritical(const Graph& g, double p, double epsilon,
                                          std::uint64_t seed,
                                          std::uint64_t max_replicas = 1 << 17);

/// (1-eps)-quantile of sampled density of K1: the largest sampled density
/// beta such that at least an eps fraction of samples reach beta.
double typical_density(const Graph& g, double p, double epsilon, std::uint64_t replicas,
                       std::uint64_t seed);

/// I from inverting the curve at delta and 1-delta; Q = grid cells of I where
/// p * f'(p) <= 4/delta, f' by centered differences with bandwidth 3 cells.
QSet q_set_and_interval(const EmpiricalCurve& curve, double beta, double delta);

/// Constructive good-sprinkling sequence: measure-preserving map onto Q
/// followed by recursive trisection with the smaller-f-increment branch rule.
SprinklingSequence sprinkling_sequence(const EmpiricalCurve& curve, const QSet& q_set,
                                       int count);

}  // namespace perc
