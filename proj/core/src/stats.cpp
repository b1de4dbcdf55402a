#include "perc/stats.hpp"

#include <algorithm>
#include <cmath>

#include "perc/errors.hpp"

namespace perc {

Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  Proportion r;
  r.successes = successes;
  r.trials = trials;
  if (trials == 0) return r;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  r.hat = phat;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2.0 * n);
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  r.lo = std::max(0.0, (center - half) / denom);
  r.hi = std::min(1.0, (center + half) / denom);
  return r;
}

std::vector<double> isotonic_regression(const std::vector<double>& y,
                                        const std::vector<double>& w) {
  const std::size_t n = y.size();
  if (w.size() != n) throw invalid_parameter("isotonic: weight length mismatch");
  // Pool-adjacent-violators with a block stack.
  std::vector<double> mean;
  std::vector<double> weight;
  std::vector<std::size_t> count;
  mean.reserve(n);
  weight.reserve(n);
  count.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = y[i], ww = w[i];
    std::size_t c = 1;
    while (!mean.empty() && mean.back() > m) {
      m = (mean.back() * weight.back() + m * ww) / (weight.back() + ww);
      ww += weight.back();
      c += count.back();
      mean.pop_back();
      weight.pop_back();
      count.pop_back();
    }
    mean.push_back(m);
    weight.push_back(ww);
    count.push_back(c);
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t b = 0; b < mean.size(); ++b)
    out.insert(out.end(), count[b], mean[b]);
  return out;
}

std::vector<double> binomial_weights(int m, double p) {
  if (m < 0) throw invalid_parameter("binomial_weights: negative m");
  std::vector<double> w(m + 1, 0.0);
  if (p <= 0.0) {
    w[0] = 1.0;
    return w;
  }
  if (p >= 1.0) {
    w[m] = 1.0;
    return w;
  }
  const int mode = std::min(m, static_cast<int>((m + 1) * p));
  // log pmf at the mode, then multiplicative recurrence outward.
  double logw = std::lgamma(m + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(m - mode + 1.0) +
                mode * std::log(p) + (m - mode) * std::log1p(-p);
  w[mode] = std::exp(logw);
  const double odds = p / (1.0 - p);
  for (int k = mode + 1; k <= m; ++k) {
    w[k] = w[k - 1] * odds * (m - k + 1) / static_cast<double>(k);
    if (w[k] == 0.0) break;
  }
  for (int k = mode - 1; k >= 0; --k) {
    w[k] = w[k + 1] * (k + 1) / (odds * (m - k));
    if (w[k] == 0.0) break;
  }
  // Normalize away the tiny truncation drift.
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return w;
}

TruncatedBinomial::TruncatedBinomial(std::int64_t m, double p) {
  if (m < 0) throw invalid_parameter("TruncatedBinomial: negative m");
  if (p <= 0.0) {
    lo_ = 0;
    cdf_ = {1.0};
    return;
  }
  if (p >= 1.0) {
    lo_ = m;
    cdf_ = {1.0};
    return;
  }
  const double mean = m * p;
  const double sd = std::sqrt(m * p * (1.0 - p));
  const std::int64_t mode = std::min<std::int64_t>(m, static_cast<std::int64_t>((m + 1) * p));
  const std::int64_t lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(mean - 9.0 * sd) - 2);
  const std::int64_t hi = std::min<std::int64_t>(m, static_cast<std::int64_t>(mean + 9.0 * sd) + 2);
  lo_ = lo;
  std::vector<double> pmf(hi - lo + 1, 0.0);
  double logw = std::lgamma(m + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(m - mode + 1.0) +
                mode * std::log(p) + (m - mode) * std::log1p(-p);
  pmf[mode - lo] = std::exp(logw);
  const double odds = p / (1.0 - p);
  for (std::int64_t k = mode + 1; k <= hi; ++k)
    pmf[k - lo] = pmf[k - 1 - lo] * odds * (m - k + 1) / static_cast<double>(k);
  for (std::int64_t k = mode - 1; k >= lo; --k)
    pmf[k - lo] = pmf[k + 1 - lo] * (k + 1) / (odds * (m - k));
  cdf_.resize(pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    cdf_[i] = acc;
  }
  for (double& c : cdf_) c /= acc;
}

std::int64_t TruncatedBinomial::sample(double u) const {
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return lo_ + (it - cdf_.begin());
}

}  // namespace perc
