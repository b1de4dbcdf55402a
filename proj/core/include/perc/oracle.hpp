#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <vector>

#include "perc/graph.hpp"

namespace perc {

using Rational = boost::multiprecision::cpp_rational;

/// Hard cap for exhaustive enumeration over {0,1}^E.
inline constexpr int kOracleMaxEdges = 22;

/// Exact level counts of an event: counts[k] = number of configurations in
/// the event with exactly k open edges. P_p(A) = sum_k counts[k] p^k (1-p)^(m-k).
struct LevelCounts {
  int m_edges = 0;
  std::vector<std::uint64_t> counts;
};

/// Event predicate over a full configuration given as an edge bitmask.
using MaskPredicate = std::function<bool(const Graph&, std::uint32_t mask)>;

// Mask helpers for building predicates.
std::uint32_t mask_k1(const Graph& g, std::uint32_t mask);
bool mask_connected(const Graph& g, std::uint32_t mask, std::uint32_t u, std::uint32_t v);
/// Event {density of K1 >= alpha}.
MaskPredicate event_k1_density(double alpha);
MaskPredicate event_two_point(std::uint32_t u, std::uint32_t v);

/// Exhaustive enumeration of all 2^|E| configurations.
LevelCounts exact_event(const Graph& g, const MaskPredicate& pred);

double eval(const LevelCounts& lc, double p);
Rational eval_exact(const LevelCounts& lc, const Rational& p);
double derivative(const LevelCounts& lc, double p);
Rational derivative_exact(const LevelCounts& lc, const Rational& p);

/// Unique p with P_p(A) = delta for a nontrivial increasing event, by
/// bisection on the exact polynomial to absolute tolerance 1e-12.
double exact_threshold(const LevelCounts& lc, double delta);

struct RussoResult {
  LevelCounts event;
  std::vector<LevelCounts> pivotal;  // per edge index
  bool identity_holds = false;       // f'(p) == sum_e P_p(e pivotal), exactly
};

/// Per-edge pivotal counts plus the exact polynomial identity check
/// (rational equality at |E|+1 distinct rational points). Throws not_monotone
/// if a single-bit flip ever decreases the event.
RussoResult russo_decomposition(const Graph& g, const MaskPredicate& pred);

struct HarrisCheck {
  struct Row {
    Rational p;
    Rational p_ab, p_a, p_b;
    bool holds = false;
  };
  std::vector<Row> rows;
  bool all_hold = false;
};

/// Exact verification of P_p(A and B) >= P_p(A) P_p(B) at each listed p.
HarrisCheck harris_check(const Graph& g, const MaskPredicate& a, const MaskPredicate& b,
                         const std::vector<Rational>& p_list);

struct InsertionToleranceReport {
  bool precondition_ok = true;
  std::uint32_t witness = 0;  // offending configuration when !precondition_ok
  Rational p_a;               // P_p(A)
  Rational p_a_plus;          // P_p(A+)
  Rational bound;             // (eta^2/(1-p)) * (p|F|/(p|F|+1)) * P_p(A)^2
  bool inequality_holds = false;
};

/// Exact check of the quantitative insertion-tolerance bound for
/// A+ = { omega ∪ {e} : omega in A, e in F_rule(omega) }.
InsertionToleranceReport insertion_tolerance_check(
    const Graph& g, const MaskPredicate& a, std::uint32_t f_mask,
    const std::function<std::uint32_t(std::uint32_t)>& f_rule, const Rational& eta,
    const Rational& p);

class not_monotone : public std::runtime_error {
public:
  explicit not_monotone(const std::string& what) : std::runtime_error(what) {}
};

class no_threshold : public std::runtime_error {
public:
  explicit no_threshold(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perc
