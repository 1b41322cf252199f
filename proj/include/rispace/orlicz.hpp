#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rispace/step_function.hpp"

namespace rispace {

/// Unknown or malformed descriptor string (`power:2`, `logG1`, `Lp:3`, ...).
class DescriptorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Convex, even function with Phi(0) = 0 that is finite everywhere.
///
/// Catalog members evaluate through a switch; `custom` wraps an arbitrary
/// callable and is admitted only if it passes sampled checks of evenness,
/// monotonicity on [0, inf) and midpoint convexity.
class OrliczFunction {
 public:
  enum class Kind { ExpSquareMinusOne, Power, Hinge, Custom };

  /// e^{s^2} - 1.
  static OrliczFunction exp_square();
  /// |s|^p, p >= 1.
  static OrliczFunction power(double p);
  /// (|s| - a)^+, a >= 0.
  static OrliczFunction hinge(double a);
  static OrliczFunction custom(std::string name, std::function<double(double)> phi);

  double operator()(double s) const;

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  const std::string& descriptor() const { return name_; }

 private:
  OrliczFunction(Kind kind, double param, std::string name);

  Kind kind_;
  double param_;
  std::string name_;
  std::shared_ptr<const std::function<double(double)>> custom_;
};

/// Parses `exp2`, `power:p` or `hinge:a`.
OrliczFunction parse_orlicz(std::string_view descriptor);

/// Integral of Phi(f/lambda) over (0,1]. Throws std::domain_error for lambda <= 0.
double modular(const StepFunction& f, const OrliczFunction& phi, double lambda);

/// inf{lambda > 0 : modular(f, phi, lambda) <= 1}, by bracketing and
/// bisection to 1e-12 relative width. The returned lambda always satisfies
/// the constraint.
double luxemburg_norm(const StepFunction& f, const OrliczFunction& phi);

}  // namespace rispace
