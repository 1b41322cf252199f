#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rispace/orlicz.hpp"
#include "rispace/step_function.hpp"
#include "rispace/weights.hpp"

namespace rispace {

/// One rearrangement-invariant space on [0,1].
///
/// Construction of a space with a closed-form fundamental function checks
/// that form against the generic norm of I_(0,t] at ten points and throws
/// std::logic_error on a relative mismatch above 1e-8.
class SpaceSpec {
 public:
  enum class Kind { Orlicz, Lorentz, Marcinkiewicz, Lp, Linf };

  static SpaceSpec orlicz(OrliczFunction phi, std::string name = {});
  static SpaceSpec lorentz(ConcaveWeight phi, std::string name = {});
  static SpaceSpec marcinkiewicz(ConcaveWeight phi, std::string name = {});
  static SpaceSpec lp(double p);
  static SpaceSpec linf();

  /// Orlicz space of e^{s^2} - 1 (on simple functions).
  static SpaceSpec G();
  /// Lorentz space with weight 2/sqrt(log(e^2/t)).
  static SpaceSpec G1();
  /// Marcinkiewicz space with weight t*sqrt(log(e/t)).
  static SpaceSpec MG();
  static SpaceSpec L1() { return lp(1.0); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// Throw std::logic_error when called on the wrong kind.
  const OrliczFunction& orlicz_function() const;
  const ConcaveWeight& weight() const;
  double exponent() const;

  /// Closed-form ||I_(0,t]|| if one is known for this space.
  std::optional<double> closed_form_fundamental(double t) const;

 private:
  SpaceSpec(Kind kind, std::string name);
  void cross_check() const;

  Kind kind_;
  std::string name_;
  std::optional<OrliczFunction> orlicz_;
  std::optional<ConcaveWeight> weight_;
  double p_ = 1.0;
};

/// Parses `G`, `G1`, `MG`, `L1`, `Lp:p`, `Linf`, `orlicz:<desc>`,
/// `lorentz:<weight>`, `marcinkiewicz:<weight>`.
SpaceSpec parse_space(std::string_view descriptor);

/// Parses `power:a`, `logG`, `logG1`, `logPsi`, `envelope:<space>`.
ConcaveWeight parse_weight(std::string_view descriptor);

/// G, G1, MG, L1, Lp:2, Linf.
std::vector<SpaceSpec> catalog_spaces();

double ri_norm(const StepFunction& f, const SpaceSpec& E);

/// ||I_(0,t]||_E for 0 < t <= 1, from the closed form when available.
double fundamental_function(const SpaceSpec& E, double t);
/// ||I_(0,t]||_E computed by the general norm routine.
double fundamental_function_generic(const SpaceSpec& E, double t);

/// t -> t / ||I_(0,t]||_E, evaluated pointwise through the fundamental function.
ConcaveWeight envelope_weight(const SpaceSpec& E);

struct HingeBound {
  double lower = 0.0;         // A/2
  double upper = 0.0;         // A = integral of f* over (0,t]
  double orlicz_value = 0.0;  // Luxemburg norm under (|s| - 1/t)^+
  bool holds = true;
};

/// Compares the Orlicz norm with Phi(s) = (|s| - 1/t)^+ against the
/// partial integral A of f*; the sandwich A/2 <= N <= A is checked with 1e-9 slack.
HingeBound hinge_family_bound(const StepFunction& f, double t);

}  // namespace rispace
