#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "perc/errors.hpp"
#include "perc/estimators.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"

using perc::EmpiricalCurve;
using perc::Graph;

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * i / (count - 1));
  return g;
}

// Analytic curve stand-in: exact values with negligible uncertainty.
EmpiricalCurve analytic_curve(const std::vector<double>& grid,
                              const std::function<double(double)>& f,
                              double alpha = 1.0) {
  EmpiricalCurve c;
  c.alpha = alpha;
  c.p_grid = grid;
  for (double p : grid) {
    const double v = f(p);
    c.f_hat.push_back(v);
    c.ci_lo.push_back(std::max(0.0, v - 1e-9));
    c.ci_hi.push_back(std::min(1.0, v + 1e-9));
    c.successes.push_back(0);
    c.trials.push_back(1);
  }
  return c;
}

}  // namespace

TEST_CASE("curve for a trivial density threshold is identically one") {
  const Graph g = Graph::cycle(5);
  const EmpiricalCurve c = perc::estimate_curve(g, 1.0 / 5.0, linspace(0, 1, 17), 200, 3);
  for (double v : c.f_hat) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("curve matches the cycle enumeration at one half") {
  const std::vector<double> grid = linspace(0, 1, 33);
  for (perc::CurveMethod method :
       {perc::CurveMethod::direct, perc::CurveMethod::sweep_pool}) {
    const EmpiricalCurve c = perc::estimate_curve(Graph::cycle(4), 0.75, grid, 4000, 5, method);
    const std::size_t mid = 16;  // p = 0.5
    CHECK(c.p_grid[mid] == doctest::Approx(0.5));
    CHECK(c.ci_lo[mid] <= 9.0 / 16.0);
    CHECK(c.ci_hi[mid] >= 9.0 / 16.0);
    for (std::size_t i = 0; i + 1 < c.f_hat.size(); ++i) CHECK(c.f_hat[i] <= c.f_hat[i + 1]);
    for (std::size_t i = 0; i < c.f_hat.size(); ++i) {
      CHECK(c.ci_lo[i] <= c.f_hat[i]);
      CHECK(c.f_hat[i] <= c.ci_hi[i]);
      CHECK(c.trials[i] > 0);
    }
  }
}

TEST_CASE("curve brackets the giant transition on the complete graph") {
  const Graph g = Graph::complete(400);
  const std::vector<double> grid = linspace(0.5 / 400, 6.0 / 400, 23);
  const EmpiricalCurve c = perc::estimate_curve(g, 0.5, grid, 400, 9);
  CHECK(perc::curve_value(c, 1.0 / 400) <= 0.05);
  CHECK(perc::curve_value(c, 4.0 / 400) >= 0.95);
}

TEST_CASE("threshold on a single edge recovers delta") {
  const Graph edge = Graph::complete(2);
  const auto est = perc::threshold(edge, 1.0, 0.3, 0.01, 13);
  CHECK(est.p_lo <= est.p_hat);
  CHECK(est.p_hat <= est.p_hi);
  CHECK(std::abs(est.p_hat - 0.3) < 0.02);
}

TEST_CASE("threshold agrees with the exact inversion on the cycle") {
  const Graph c4 = Graph::cycle(4);
  const auto est = perc::threshold(c4, 0.75, 0.5, 0.01, 17);
  CHECK(std::abs(est.p_hat - perc::exact_threshold(
                                 perc::exact_event(c4, perc::event_k1_density(0.75)), 0.5)) <
        0.03);
}

TEST_CASE("threshold of the giant on a large complete graph") {
  const auto est = perc::threshold(Graph::complete(1000), 0.5, 0.5, 2e-4, 19);
  CHECK(est.p_hat * 1000 >= 1.15);
  CHECK(est.p_hat * 1000 <= 1.45);
}

TEST_CASE("threshold is monotone in delta") {
  const Graph g = Graph::complete(300);
  const auto lo = perc::threshold(g, 0.5, 0.3, 2e-4, 23);
  const auto hi = perc::threshold(g, 0.5, 0.7, 2e-4, 23);
  CHECK(lo.p_hat <= hi.p_hat + 4e-4);
}

TEST_CASE("exhausted budget yields an honest inconclusive flag") {
  // f(p) = p and delta = 1/2: the first probe sits exactly on delta, so the
  // Wilson interval can never exclude it.
  perc::ThresholdOptions opts;
  opts.batch = 64;
  opts.max_replicas_per_probe = 256;
  const auto est = perc::threshold(Graph::complete(2), 1.0, 0.5, 1e-6, 29, opts);
  CHECK(est.inconclusive);
  CHECK(est.p_lo <= est.p_hat);
  CHECK(est.p_hat <= est.p_hi);
}

TEST_CASE("sharpness ratio is at least one") {
  const auto r = perc::sharp_density_ratio(Graph::complete(200), 0.5, 0.1, 1e-6, 31, 300);
  CHECK(r.ratio >= 1.0);
  CHECK(r.ratio_lo <= r.ratio);
  CHECK(r.ratio <= r.ratio_hi);
  CHECK(r.low.p_hat <= r.high.p_hat);
}

TEST_CASE("supercriticality verdicts") {
  // Size clause: |V| < 2 eps^-3.
  const auto small = perc::epsilon_supercritical(Graph::complete(100), 0.02, 0.2, 37);
  CHECK_FALSE(small.size_ok);
  CHECK_FALSE(small.value);

  const auto er = perc::epsilon_supercritical(Graph::complete(2000), 2.0 / 2000, 0.1, 37);
  CHECK(er.size_ok);
  CHECK(er.value);
  CHECK_FALSE(er.inconclusive);

  // One-dimensional percolation never carries a giant.
  const auto ring = perc::epsilon_supercritical(Graph::cycle(4096), 0.9, 0.1, 37);
  CHECK(ring.size_ok);
  CHECK_FALSE(ring.value);
}

TEST_CASE("typical density quantiles") {
  const Graph g = Graph::complete(50);
  CHECK(perc::typical_density(g, 1.0, 0.2, 64, 41) == doctest::Approx(1.0));
  CHECK(perc::typical_density(g, 0.0, 0.2, 64, 41) == doctest::Approx(1.0 / 50));

  const double lam = perc::typical_density(Graph::complete(1000), 2.0 / 1000, 0.25, 2000, 41);
  CHECK(std::abs(lam - 0.7968) < 0.03);
}

TEST_CASE("epsilon threshold dominates the inverse degree bound") {
  // p_c(eps, eps) >= 1/(2d) whenever |V| >= 2 eps^-3; eps = 0.25 needs 128+.
  const double eps = 0.25;
  for (const Graph& g : {Graph::complete(200), Graph::torus({16, 16})}) {
    REQUIRE(g.n_vertices() >= 2.0 / (eps * eps * eps));
    const auto est = perc::threshold(g, eps, eps, 1e-3, 43);
    CHECK(est.p_lo >= 1.0 / (2.0 * g.mean_degree()));
  }
}

TEST_CASE("q set of the linear curve covers the whole interval") {
  const auto curve = analytic_curve(linspace(0, 1, 101), [](double p) { return p; });
  const perc::QSet q = perc::q_set_and_interval(curve, 1.0, 0.1);
  CHECK(q.i_lo == doctest::Approx(0.1).epsilon(0.05));
  CHECK(q.i_hi == doctest::Approx(0.9).epsilon(0.05));
  // f' = 1 everywhere, so p f'(p) <= 4/delta = 40 holds on all of I.
  CHECK(q.measure == doctest::Approx(0.8).epsilon(0.05));
}

TEST_CASE("q set resolution guard") {
  const auto coarse = analytic_curve(linspace(0, 1, 9), [](double p) { return p; });
  CHECK_THROWS_AS(perc::q_set_and_interval(coarse, 1.0, 0.1), perc::resolution_error);
}

TEST_CASE("q set keeps at least half the interval on the complete graph") {
  const Graph g = Graph::complete(400);
  // The transition lives in a narrow window around 1.4/n; the grid must put
  // at least 16 cells inside I.
  const std::vector<double> grid = linspace(0.8 / 400, 2.8 / 400, 129);
  const EmpiricalCurve c = perc::estimate_curve(g, 0.5, grid, 2000, 47);
  const perc::QSet q = perc::q_set_and_interval(c, 0.5, 0.1);
  CHECK(q.measure >= 0.5 * (q.i_hi - q.i_lo));
}

TEST_CASE("q set from the estimated curve matches the exact polynomial") {
  const Graph c4 = Graph::cycle(4);
  const auto lc = perc::exact_event(c4, perc::event_k1_density(0.75));
  const std::vector<double> grid = linspace(0, 1, 65);
  const auto exact =
      analytic_curve(grid, [&lc](double p) { return perc::eval(lc, p); }, 0.75);
  const perc::QSet from_exact = perc::q_set_and_interval(exact, 0.75, 0.2);

  const EmpiricalCurve est = perc::estimate_curve(c4, 0.75, grid, 20000, 53);
  const perc::QSet from_est = perc::q_set_and_interval(est, 0.75, 0.2);

  const double cell = grid[1] - grid[0];
  CHECK(std::abs(from_exact.i_lo - from_est.i_lo) <= 2 * cell);
  CHECK(std::abs(from_exact.i_hi - from_est.i_hi) <= 2 * cell);
  CHECK(std::abs(from_exact.measure - from_est.measure) <= 4 * cell);
}

TEST_CASE("sprinkling over the full interval with a linear curve") {
  const auto curve = analytic_curve(linspace(0, 1, 101), [](double p) { return p; });
  perc::QSet q;
  q.i_lo = 0.0;
  q.i_hi = 1.0;
  q.bound = 40.0;
  q.cells = {{0.0, 1.0}};
  q.measure = 1.0;
  const perc::SprinklingSequence seq = perc::sprinkling_sequence(curve, q, 6);
  REQUIRE(seq.p_seq.size() == 6);
  double scale = 1.0;
  for (std::size_t i = 0; i + 1 < seq.p_seq.size(); ++i) {
    scale /= 3.0;
    // Linear f ties both branch choices; the tie-break picks the first, so
    // the step equals the lower bound exactly.
    CHECK(seq.p_seq[i + 1] - seq.p_seq[i] == doctest::Approx(scale).epsilon(0.02));
    CHECK(seq.p_seq[i + 1] - seq.p_seq[i] >= scale * q.measure - 1e-6);
    if (i > 0)
      CHECK(seq.f_at_p[i + 1] - seq.f_at_p[i] <= std::pow(2.0, -static_cast<double>(i)) + 1e-6);
  }
}

TEST_CASE("sprinkling over a two piece q set") {
  const auto curve = analytic_curve(linspace(0, 1, 201), [](double p) { return p; });
  perc::QSet q;
  q.i_lo = 0.0;
  q.i_hi = 1.0;
  q.bound = 40.0;
  q.cells = {{0.0, 0.25}, {0.75, 1.0}};
  q.measure = 0.5;
  const perc::SprinklingSequence seq = perc::sprinkling_sequence(curve, q, 5);
  REQUIRE(seq.p_seq.size() == 5);
  for (std::size_t i = 0; i + 1 < seq.p_seq.size(); ++i) {
    CHECK(seq.p_seq[i + 1] > seq.p_seq[i]);
    CHECK(seq.p_seq[i + 1] - seq.p_seq[i] >=
          std::pow(3.0, -static_cast<double>(i + 1)) * q.measure - 1e-6);
  }
}

TEST_CASE("sprinkling depth guard") {
  const auto curve = analytic_curve(linspace(0, 1, 101), [](double p) { return p; });
  perc::QSet q;
  q.cells = {{0.0, 1.0}};
  q.measure = 1.0;
  q.i_lo = 0.0;
  q.i_hi = 1.0;
  CHECK_THROWS_AS(perc::sprinkling_sequence(curve, q, 64), perc::resolution_error);
}
