#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rispace/orlicz.hpp"
#include "rispace/spaces.hpp"
#include "rispace/step_function.hpp"

namespace rispace {

/// Largest n for which 2^n sign patterns are enumerated explicitly.
inline constexpr int kMaxEnumeration = 24;
/// Largest n for the equal-coefficient binomial path.
inline constexpr int kMaxBinomial = 60;

/// Signs eps_1..eps_n, each exactly +1 or -1.
class SignVector {
 public:
  explicit SignVector(std::vector<int> signs);

  static SignVector all_plus(std::size_t n);
  /// Pattern number `index` in lexicographic order, +1 before -1: the sign
  /// of entry i is -1 iff bit (n-1-i) of `index` is set.
  static SignVector from_index(std::size_t n, std::uint64_t index);

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  std::span<const int> signs() const { return signs_; }
  SignVector negated() const;
  /// "+-+-" style rendering.
  std::string to_string() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<int> signs_;
};

/// r_n(t) = sign(sin(2^n pi t)) as a step function on 2^n dyadic intervals.
/// Throws std::out_of_range unless 1 <= n <= 24.
StepFunction rademacher(int n);

/// Sum of eps_i a_i r_i.
StepFunction signed_sum(std::span<const double> coeffs, const SignVector& eps);
/// Sum of eps_i x_i on the common refinement of the x_i.
StepFunction signed_sum(std::span<const StepFunction> xs, const SignVector& eps);

/// Non-increasing rearrangement of |sum a_i r_i|: the distribution of
/// |sum a_i eps_i| under uniform signs, as a function on (0,1]. Uses exact
/// enumeration for n <= 24 and binomial weights when all |a_i| agree
/// (n <= 60). Throws std::out_of_range beyond those caps.
StepFunction sum_rearrangement(std::span<const double> coeffs);

/// Exact enumeration path of `sum_rearrangement`, bypassing the binomial path.
StepFunction sum_rearrangement_enumerated(std::span<const double> coeffs);
/// Binomial path; requires every |a_i| equal.
StepFunction sum_rearrangement_binomial(std::span<const double> coeffs);

/// ||sum a_i r_i||_E.
double rademacher_sum_norm(std::span<const double> coeffs, const SpaceSpec& E);

/// x_1..x_n sampled on their common refinement, so signed sums and modulars
/// for many sign patterns cost O(n m) each without rebuilding the partition.
class SignedFamily {
 public:
  explicit SignedFamily(std::vector<StepFunction> xs);

  std::size_t size() const { return xs_.size(); }
  const std::vector<StepFunction>& functions() const { return xs_; }
  std::span<const double> lengths() const { return lengths_; }
  std::size_t interval_count() const { return ends_.size(); }
  /// x_i sampled on the refinement intervals.
  std::span<const double> samples(std::size_t i) const {
    return std::span<const double>(samples_).subspan(i * ends_.size(), ends_.size());
  }

  /// Values of sum eps_i x_i on the refinement intervals.
  void values(const SignVector& eps, std::vector<double>& out) const;
  StepFunction combine(const SignVector& eps) const;
  double modular(const SignVector& eps, const OrliczFunction& phi, double lambda) const;

 private:
  std::vector<StepFunction> xs_;
  std::vector<double> ends_;
  std::vector<double> lengths_;
  std::vector<double> samples_;  // row i holds x_i on each refinement interval
};

}  // namespace rispace
