#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rispace/step_function.hpp"

namespace rispace {

/// Seeded generator with platform-independent conversions (the standard
/// distributions are implementation-defined, which would break
/// byte-identical reports across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// 1-10 plateaus with sorted uniform breakpoints; values uniform in (-1,1),
/// with probability 0.15 replaced by a spike of magnitude in [3,8].
StepFunction random_step_function(Rng& rng, int max_plateaus = 10);
/// Same partition model with values drawn from {0, 1}.
StepFunction random_indicator_valued(Rng& rng, int max_plateaus = 10);
/// Non-negative non-increasing: the rearrangement of a random step function.
StepFunction random_nonincreasing(Rng& rng, int max_plateaus = 10);
/// Gaussian direction normalized to Euclidean length 1.
std::vector<double> random_unit_vector(Rng& rng, int n);

}  // namespace rispace
