#include <bit>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "perc/errors.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"
#include "perc/serialize.hpp"

using perc::Graph;
using perc::LevelCounts;
using perc::Rational;

namespace {

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("full event counts are binomial coefficients") {
  const Graph c3 = Graph::cycle(3);
  const LevelCounts full =
      perc::exact_event(c3, [](const Graph&, std::uint32_t) { return true; });
  CHECK(full.counts == std::vector<std::uint64_t>{1, 3, 3, 1});
  for (double p : {0.0, 0.3, 0.5, 1.0}) CHECK(perc::eval(full, p) == doctest::Approx(1.0));

  const LevelCounts empty =
      perc::exact_event(c3, [](const Graph&, std::uint32_t) { return false; });
  for (double p : {0.0, 0.5, 1.0}) CHECK(perc::eval(empty, p) == doctest::Approx(0.0));
}

TEST_CASE("event and complement counts partition the cube") {
  const Graph g = Graph::hypercube(3);
  const auto pred = perc::event_k1_density(0.5);
  const LevelCounts lc = perc::exact_event(g, pred);
  const LevelCounts co = perc::exact_event(
      g, [&pred](const Graph& h, std::uint32_t mask) { return !pred(h, mask); });
  for (int k = 0; k <= lc.m_edges; ++k)
    CHECK(lc.counts[k] + co.counts[k] == binom(lc.m_edges, k));
}

TEST_CASE("named enumeration values") {
  const Graph c4 = Graph::cycle(4);
  const LevelCounts giant = perc::exact_event(c4, perc::event_k1_density(0.75));
  CHECK(perc::eval_exact(giant, Rational(1, 2)) == Rational(9, 16));

  const Graph k3 = Graph::complete(3);
  const LevelCounts tp = perc::exact_event(k3, perc::event_two_point(0, 1));
  CHECK(perc::eval_exact(tp, Rational(1, 2)) == Rational(5, 8));
}

TEST_CASE("increasing events have nondecreasing probability") {
  const Graph g = Graph::cycle(5);
  const LevelCounts lc = perc::exact_event(g, perc::event_k1_density(0.6));
  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double v = perc::eval(lc, i / 10.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("exact threshold inverts the polynomial") {
  const Graph edge = Graph::complete(2);
  const LevelCounts open = perc::exact_event(
      edge, [](const Graph&, std::uint32_t mask) { return mask != 0; });
  CHECK(perc::exact_threshold(open, 0.3) == doctest::Approx(0.3).epsilon(1e-9));

  const Graph c4 = Graph::cycle(4);
  const LevelCounts giant = perc::exact_event(c4, perc::event_k1_density(0.75));
  CHECK(perc::exact_threshold(giant, 9.0 / 16.0) == doctest::Approx(0.5).epsilon(1e-9));

  const LevelCounts full =
      perc::exact_event(c4, [](const Graph&, std::uint32_t) { return true; });
  CHECK_THROWS_AS(perc::exact_threshold(full, 0.5), perc::no_threshold);
}

TEST_CASE("derivative of a single edge event is one") {
  const Graph edge = Graph::complete(2);
  const LevelCounts open = perc::exact_event(
      edge, [](const Graph&, std::uint32_t mask) { return mask != 0; });
  for (double p : {0.1, 0.5, 0.9}) CHECK(perc::derivative(open, p) == doctest::Approx(1.0));
  CHECK(perc::derivative_exact(open, Rational(1, 3)) == Rational(1));
}

TEST_CASE("pivotal decomposition satisfies the derivative identity") {
  const Graph edge = Graph::complete(2);
  const auto single = perc::russo_decomposition(
      edge, [](const Graph&, std::uint32_t mask) { return mask != 0; });
  CHECK(single.identity_holds);
  CHECK(perc::eval(single.pivotal[0], 0.7) == doctest::Approx(1.0));

  for (const Graph& g : {Graph::cycle(3), Graph::cycle(5), Graph::complete(4),
                         Graph::hypercube(3)}) {
    for (double alpha : {0.5, 0.75, 1.0}) {
      const auto res = perc::russo_decomposition(g, perc::event_k1_density(alpha));
      CHECK(res.identity_holds);
    }
  }
}

TEST_CASE("non increasing events are rejected") {
  const Graph c3 = Graph::cycle(3);
  CHECK_THROWS_AS(perc::russo_decomposition(
                      c3, [](const Graph&, std::uint32_t mask) { return mask == 0; }),
                  perc::not_monotone);
}

TEST_CASE("positive correlation of increasing events") {
  const Graph c4 = Graph::cycle(4);
  const std::vector<Rational> ps = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};

  const auto self = perc::harris_check(c4, perc::event_k1_density(0.75),
                                       perc::event_k1_density(0.75), ps);
  CHECK(self.all_hold);

  const auto pair =
      perc::harris_check(c4, perc::event_two_point(0, 1), perc::event_two_point(1, 2), ps);
  CHECK(pair.all_hold);
  for (const auto& row : pair.rows) CHECK(row.p_ab >= row.p_a * row.p_b);

  // A = full event: equality.
  const auto full = perc::harris_check(
      c4, [](const Graph&, std::uint32_t) { return true; }, perc::event_two_point(0, 2), ps);
  CHECK(full.all_hold);
  for (const auto& row : full.rows) CHECK(row.p_ab == row.p_a * row.p_b);
}

TEST_CASE("insertion tolerance bound on constructed instances") {
  // Empty event: both sides zero.
  {
    const Graph c4 = Graph::cycle(4);
    const auto rep = perc::insertion_tolerance_check(
        c4, [](const Graph&, std::uint32_t) { return false; }, 0xF,
        [](std::uint32_t) { return 0xFu; }, Rational(1), Rational(1, 4));
    CHECK(rep.precondition_ok);
    CHECK(rep.inequality_holds);
    CHECK(rep.p_a == 0);
  }
  // Cycle with everything closed; any edge may be inserted.
  {
    const Graph c4 = Graph::cycle(4);
    const auto rep = perc::insertion_tolerance_check(
        c4, [](const Graph&, std::uint32_t mask) { return mask == 0; }, 0xF,
        [](std::uint32_t mask) { return 0xFu & ~mask; }, Rational(1), Rational(1, 4));
    CHECK(rep.precondition_ok);
    CHECK(rep.inequality_holds);
    CHECK(rep.p_a_plus > rep.bound);
  }
  // K4 with a closed perfect matching as the insertable set.
  {
    const Graph k4 = Graph::complete(4);
    const std::uint32_t matching = (1u << 0) | (1u << 5);  // edges (0,1) and (2,3)
    const auto pred = [matching](const Graph& g, std::uint32_t mask) {
      return perc::mask_k1(g, mask) <= 2 && (mask & matching) == 0;
    };
    const auto rep = perc::insertion_tolerance_check(
        k4, pred, matching, [matching](std::uint32_t mask) { return matching & ~mask; },
        Rational(1), Rational(1, 2));
    CHECK(rep.precondition_ok);
    CHECK(rep.inequality_holds);
  }
}

TEST_CASE("enumeration size cap") {
  CHECK_THROWS_AS(perc::exact_event(Graph::complete(8),
                                    [](const Graph&, std::uint32_t) { return true; }),
                  perc::size_limit);
}

TEST_CASE("level counts JSON round trip") {
  const Graph c4 = Graph::cycle(4);
  const LevelCounts lc = perc::exact_event(c4, perc::event_k1_density(0.75));
  const LevelCounts back = perc::level_counts_from_json(perc::level_counts_to_json(lc));
  CHECK(back.m_edges == lc.m_edges);
  CHECK(back.counts == lc.counts);
}
