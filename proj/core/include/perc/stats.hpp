#pragma once

#include <cstdint>
#include <vector>

namespace perc {

/// A binomial proportion with its Wilson score interval.
struct Proportion {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double hat = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval. z defaults to the two-sided 95% quantile; the same
/// z gives one-sided 97.5% bounds, which is what the sequential tests use.
Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Weighted pool-adjacent-violators: least-squares isotonic regression of y
/// (nondecreasing) with weights w. Returns the fitted vector.
std::vector<double> isotonic_regression(const std::vector<double>& y,
                                        const std::vector<double>& w);

/// Binomial(m, p) pmf over k = 0..m via the stable mode-outward recurrence.
std::vector<double> binomial_weights(int m, double p);

/// Inversion sampler for Binomial(m, p), truncated to the support window that
/// carries all but ~1e-15 of the mass. Deterministic given the uniform, cheap
/// to sample repeatedly at a fixed (m, p).
class TruncatedBinomial {
public:
  TruncatedBinomial(std::int64_t m, double p);
  /// Quantile of the truncated distribution at u in [0, 1).
  std::int64_t sample(double u) const;

  /// P(N <= k) of the truncated distribution.
  double cdf(std::int64_t k) const {
    if (k < lo_) return 0.0;
    const std::size_t i = static_cast<std::size_t>(k - lo_);
    return i >= cdf_.size() ? 1.0 : cdf_[i];
  }

private:
  std::int64_t lo_ = 0;
  std::vector<double> cdf_;
};

}  // namespace perc
