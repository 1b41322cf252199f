#include "rispace/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rispace {

namespace {

std::vector<double> random_ends(Rng& rng, int plateaus) {
  std::vector<double> ends;
  while (static_cast<int>(ends.size()) < plateaus - 1) {
    const double t = rng.uniform();
    if (t > 0.0) ends.push_back(t);
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  ends.push_back(1.0);
  return ends;
}

}  // namespace

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  // Box-Muller; the second variate is discarded to keep the state simple.
  double u = 0.0;
  while (u == 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

StepFunction random_step_function(Rng& rng, int max_plateaus) {
  const int k = rng.uniform_int(1, max_plateaus);
  std::vector<double> ends = random_ends(rng, k);
  std::vector<double> values(ends.size());
  for (double& v : values) {
    if (rng.bernoulli(0.15)) {
      v = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.uniform(3.0, 8.0);
    } else {
      v = rng.uniform(-1.0, 1.0);
    }
  }
  return StepFunction(std::move(ends), std::move(values));
}

StepFunction random_indicator_valued(Rng& rng, int max_plateaus) {
  const int k = rng.uniform_int(1, max_plateaus);
  std::vector<double> ends = random_ends(rng, k);
  std::vector<double> values(ends.size());
  for (double& v : values) v = rng.bernoulli(0.5) ? 1.0 : 0.0;
  return StepFunction(std::move(ends), std::move(values));
}

StepFunction random_nonincreasing(Rng& rng, int max_plateaus) {
  return rearrange(random_step_function(rng, max_plateaus));
}

std::vector<double> random_unit_vector(Rng& rng, int n) {
  std::vector<double> a(static_cast<std::size_t>(n));
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& x : a) x = rng.normal();
    norm = 0.0;
    for (double x : a) norm += x * x;
    norm = std::sqrt(norm);
  }
  for (double& x : a) x /= norm;
  return a;
}

}  // namespace rispace
