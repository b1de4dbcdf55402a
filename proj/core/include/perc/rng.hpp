#pragma once

#include <cmath>
#include <cstdint>

namespace perc {

/// Counter-based keyed generator. A generator is a pure function of
/// (key, counter), so streams can be split arbitrarily and replicas evaluated
/// in any order or on any number of threads with identical output.
///
/// The output function is the 64-bit finalizer from SplitMix64 applied to
/// key + counter * golden-ratio increment, which is statistically solid for
/// Monte Carlo use and extremely cheap.
class SplitRng {
public:
  SplitRng(std::uint64_t seed, std::uint64_t stream)
      : key_(derive_key(seed, stream)) {}

  /// Independent generator keyed off this one. Splitting with distinct tags
  /// from the same parent never collides with the parent's own output stream.
  SplitRng split(std::uint64_t tag) const {
    return SplitRng(mix(key_ ^ 0x9e3779b97f4a7c15ULL), mix(tag + 0x6a09e667f3bcc909ULL));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (counter_++) * 0x9e3779b97f4a7c15ULL;
    return mix(z);
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Lemire's rejection method, unbiased.
  std::uint32_t next_below(std::uint32_t n) {
    std::uint64_t x = next_u64() & 0xffffffffULL;
    std::uint64_t m = x * n;
    std::uint32_t l = static_cast<std::uint32_t>(m);
    if (l < n) {
      std::uint32_t t = (0u - n) % n;
      while (l < t) {
        x = next_u64() & 0xffffffffULL;
        m = x * n;
        l = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// Number of failures before the next success in Bernoulli(p) trials.
  /// Used for skip-sampling sparse configurations.
  std::uint64_t geometric_skip(double log1mp) {
    // log1mp = log(1-p) < 0, precomputed by the caller.
    double u = next_double();
    return static_cast<std::uint64_t>(std::log1p(-u) / log1mp);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbb67ae8584caa73bULL));
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace perc
