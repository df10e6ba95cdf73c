#pragma once

#include <cstdint>
#include <random>

namespace mscale {

struct Seed {
  std::uint64_t value = 0;
};

/// Deterministic random source for the signal generators.
///
/// Uses std::mt19937_64, whose output sequence is fixed by the C++ standard.
/// Uniform deviates take the top 53 bits of one draw; normal deviates use the
/// Box-Muller transform on two uniforms and cache the second value. None of
/// the distribution adaptors from <random> are used, since their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace mscale
