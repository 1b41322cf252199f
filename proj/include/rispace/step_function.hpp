#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rispace {

/// Piecewise-constant function on (0,1].
///
/// Stored as right endpoints 0 < t_1 < ... < t_k = 1 and values v_1..v_k,
/// where v_i is the value on (t_{i-1}, t_i] and t_0 = 0. The point t = 0
/// carries no mass. Adjacent intervals with equal values are merged on
/// construction, so two functions that agree almost everywhere compare equal.
class StepFunction {
 public:
  /// The zero function.
  StepFunction();

  /// Throws std::invalid_argument unless the ends are strictly increasing in
  /// (0,1], the last end is exactly 1, sizes match and all values are finite.
  StepFunction(std::vector<double> ends, std::vector<double> values);

  static StepFunction constant(double c);
  /// I_(0,t]; t = 0 yields the zero function.
  static StepFunction indicator(double t);

  std::size_t size() const { return ends_.size(); }
  std::span<const double> ends() const { return ends_; }
  std::span<const double> values() const { return values_; }

  double left(std::size_t i) const { return i == 0 ? 0.0 : ends_[i - 1]; }
  double right(std::size_t i) const { return ends_[i]; }
  double length(std::size_t i) const { return ends_[i] - left(i); }
  double value(std::size_t i) const { return values_[i]; }

  /// Value at t in (0,1]; f(0) is reported as the first value.
  double operator()(double t) const;

  bool is_nonincreasing() const;
  bool is_nonnegative() const;
  bool is_zero() const;

  StepFunction scaled(double c) const;
  StepFunction abs() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  void canonicalize();

  std::vector<double> ends_;
  std::vector<double> values_;
};

/// Non-increasing rearrangement of |f|.
StepFunction rearrange(const StepFunction& f);

double integral(const StepFunction& f);

/// Integral of f over (0,t]. Throws std::domain_error for t outside [0,1].
double partial_integral(const StepFunction& f, double t);

/// Sum of v_i (phi(t_i) - phi(t_{i-1})), with phi(0) taken as phi(0).
double stieltjes(const StepFunction& f, const std::function<double(double)>& phi);

double l1_norm(const StepFunction& f);
double linf_norm(const StepFunction& f);
/// Throws std::domain_error for p < 1.
double lp_norm(const StepFunction& f, double p);

/// Lebesgue measure of {t : |f(t)| > c}.
double measure_above(const StepFunction& f, double c);

/// Union of all breakpoints, sorted and deduplicated. Always ends in 1.
std::vector<double> common_refinement(std::span<const StepFunction> fs);

/// Pointwise sum of coeffs[i] * fs[i] on the common refinement.
StepFunction linear_combination(std::span<const StepFunction> fs,
                                std::span<const double> coeffs);

/// Failure while reading the `stepfn v1` text format. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

StepFunction read_step_function(std::istream& in);
StepFunction parse_step_function(std::string_view text);
StepFunction load_step_function(const std::string& path);

/// Emits `stepfn v1` followed by one `t_i v_i` line per interval, using
/// round-trip precision.
void write_step_function(std::ostream& out, const StepFunction& f);
std::string format_step_function(const StepFunction& f);
void save_step_function(const std::string& path, const StepFunction& f);

}  // namespace rispace
