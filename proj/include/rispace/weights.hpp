#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rispace/step_function.hpp"

namespace rispace {

/// Result of sampling a weight for the properties Lorentz and Marcinkiewicz
/// norms rely on. Normalization phi(1) != 1 is only a warning.
struct WeightDiagnostics {
  bool valid = true;
  bool vanishes_at_zero = true;
  bool monotone = true;
  bool concave = true;
  bool positive = true;  // phi(t) > 0 for every sampled t in (0,1]
  double at_zero_plus = 0.0;  // phi(1e-12)
  double at_one = 0.0;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Increasing concave phi on [0,1] with phi(0) = 0.
class ConcaveWeight {
 public:
  enum class Kind { Power, LogG, LogG1, LogPsi, Envelope, Custom };

  /// t^alpha, 0 < alpha <= 1.
  static ConcaveWeight power(double alpha);
  /// t * sqrt(log(e/t)).
  static ConcaveWeight log_g();
  /// 2 / sqrt(log(e^2/t)).
  static ConcaveWeight log_g1();
  /// 2 / sqrt(log(e^4/t)).
  static ConcaveWeight log_psi();
  /// Arbitrary evaluator; it is sampled once and failures make the weight
  /// unusable in norms (see `diagnostics()`).
  static ConcaveWeight custom(std::string name, std::function<double(double)> phi);
  /// Like `custom`, but sampled concavity failures are downgraded to warnings.
  static ConcaveWeight envelope(std::string name, std::function<double(double)> phi);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  const std::string& descriptor() const { return name_; }
  const WeightDiagnostics& diagnostics() const { return *diagnostics_; }

 private:
  ConcaveWeight(Kind kind, double param, std::string name,
                std::shared_ptr<const std::function<double(double)>> fn);

  Kind kind_;
  double param_;
  std::string name_;
  std::shared_ptr<const std::function<double(double)>> fn_;
  std::shared_ptr<const WeightDiagnostics> diagnostics_;
};

/// Samples phi at 0, on a 101-point log grid over [1e-12, 1] and on a
/// 100-point uniform grid, checking phi(0) = 0, monotonicity, positivity and
/// concavity via slopes between consecutive samples (1e-9 slack).
WeightDiagnostics validate_weight(const ConcaveWeight& phi);

/// Integral of f* d(phi). Throws std::invalid_argument for an invalid weight.
double lorentz_norm(const StepFunction& f, const ConcaveWeight& phi);

/// Overload of `stieltjes` that rejects invalid weights.
double stieltjes(const StepFunction& f, const ConcaveWeight& phi);

struct SupResult {
  double value = 0.0;
  double argmax = 1.0;
};

/// sup over t in (0,1] of (integral of f* over (0,t]) / phi(t).
///
/// Candidates are all breakpoints of f*, a golden-section maximum inside
/// every breakpoint interval (1e-10 tolerance) and a 1024-point log-spaced
/// guard grid. Throws std::invalid_argument for an invalid weight and
/// std::domain_error if phi vanishes at an evaluated t > 0.
SupResult marcinkiewicz_sup(const StepFunction& f, const ConcaveWeight& phi);

/// Same search without rejecting invalid weights; used to exhibit what goes
/// wrong with a non-concave weight.
SupResult marcinkiewicz_sup_unchecked(const StepFunction& f, const ConcaveWeight& phi);

inline double marcinkiewicz_norm(const StepFunction& f, const ConcaveWeight& phi) {
  return marcinkiewicz_sup(f, phi).value;
}

}  // namespace rispace
