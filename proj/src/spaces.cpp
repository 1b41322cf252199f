#include "rispace/spaces.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "descriptor_util.hpp"

namespace rispace {

namespace {

constexpr double kCrossCheckTol = 1e-8;
constexpr std::array<double, 10> kCrossCheckPoints{1e-6, 1e-4, 1e-3, 0.01, 0.05,
                                                    0.1,  0.25, 0.5,  0.75, 1.0};

const char* kValidSpaces =
    "valid spaces: G, G1, MG, L1, Lp:<p>=1>, Linf, orlicz:<exp2|power:p|hinge:a>, "
    "lorentz:<weight>, marcinkiewicz:<weight>";
const char* kValidWeights =
    "valid weights: power:<0<a<=1>, logG, logG1, logPsi, envelope:<space>";

void require_unit_interval(double t, const char* what) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::domain_error(std::string(what) + ": t must lie in (0,1]");
  }
}

}  // namespace

SpaceSpec::SpaceSpec(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

SpaceSpec SpaceSpec::orlicz(OrliczFunction phi, std::string name) {
  if (name.empty()) name = "orlicz:" + phi.descriptor();
  SpaceSpec s(Kind::Orlicz, std::move(name));
  s.orlicz_ = std::move(phi);
  s.cross_check();
  return s;
}

SpaceSpec SpaceSpec::lorentz(ConcaveWeight phi, std::string name) {
  if (!phi.diagnostics().valid) {
    throw std::invalid_argument("Lorentz space needs a valid weight: " +
                                phi.diagnostics().errors.front());
  }
  if (name.empty()) name = "lorentz:" + phi.descriptor();
  SpaceSpec s(Kind::Lorentz, std::move(name));
  s.weight_ = std::move(phi);
  s.cross_check();
  return s;
}

SpaceSpec SpaceSpec::marcinkiewicz(ConcaveWeight phi, std::string name) {
  if (!phi.diagnostics().valid || !phi.diagnostics().positive) {
    throw std::invalid_argument("Marcinkiewicz space needs a valid positive weight");
  }
  if (name.empty()) name = "marcinkiewicz:" + phi.descriptor();
  SpaceSpec s(Kind::Marcinkiewicz, std::move(name));
  s.weight_ = std::move(phi);
  s.cross_check();
  return s;
}

SpaceSpec SpaceSpec::lp(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lp space needs p >= 1");
  if (std::isinf(p)) return linf();
  SpaceSpec s(Kind::Lp, p == 1.0 ? "L1" : "Lp:" + detail::format_parameter(p));
  s.p_ = p;
  return s;
}

SpaceSpec SpaceSpec::linf() { return SpaceSpec(Kind::Linf, "Linf"); }

SpaceSpec SpaceSpec::G() { return orlicz(OrliczFunction::exp_square(), "G"); }
SpaceSpec SpaceSpec::G1() { return lorentz(ConcaveWeight::log_g1(), "G1"); }
SpaceSpec SpaceSpec::MG() { return marcinkiewicz(ConcaveWeight::log_g(), "MG"); }

const OrliczFunction& SpaceSpec::orlicz_function() const {
  if (!orlicz_) throw std::logic_error("space '" + name_ + "' is not an Orlicz space");
  return *orlicz_;
}

const ConcaveWeight& SpaceSpec::weight() const {
  if (!weight_) throw std::logic_error("space '" + name_ + "' has no weight");
  return *weight_;
}

double SpaceSpec::exponent() const {
  if (kind_ != Kind::Lp) throw std::logic_error("space '" + name_ + "' is not an Lp space");
  return p_;
}

std::optional<double> SpaceSpec::closed_form_fundamental(double t) const {
  switch (kind_) {
    case Kind::Orlicz:
      switch (orlicz_->kind()) {
        case OrliczFunction::Kind::ExpSquareMinusOne:
          return 1.0 / std::sqrt(std::log1p(1.0 / t));
        case OrliczFunction::Kind::Power:
          return std::pow(t, 1.0 / orlicz_->parameter());
        case OrliczFunction::Kind::Hinge:
          return t / (orlicz_->parameter() * t + 1.0);
        case OrliczFunction::Kind::Custom:
          return std::nullopt;
      }
      return std::nullopt;
    case Kind::Lorentz:
      return (*weight_)(t);
    case Kind::Marcinkiewicz:
      // t/phi(t) is the sup only when s/phi(s) is non-decreasing.
      if (!weight_->diagnostics().concave) return std::nullopt;
      return t / (*weight_)(t);
    case Kind::Lp:
      return std::pow(t, 1.0 / p_);
    case Kind::Linf:
      return 1.0;
  }
  return std::nullopt;
}

void SpaceSpec::cross_check() const {
  for (double t : kCrossCheckPoints) {
    const auto closed = closed_form_fundamental(t);
    if (!closed) return;
    const double generic = fundamental_function_generic(*this, t);
    if (std::fabs(*closed - generic) > kCrossCheckTol * std::fabs(generic)) {
      throw std::logic_error("space '" + name_ + "': closed-form fundamental function " +
                             detail::format_parameter(*closed) + " disagrees with generic " +
                             detail::format_parameter(generic) + " at t = " +
                             detail::format_parameter(t));
    }
  }
}

SpaceSpec parse_space(std::string_view descriptor) {
  const auto [head, arg] = detail::split_descriptor(descriptor);
  try {
    if (!arg) {
      if (head == "G") return SpaceSpec::G();
      if (head == "G1") return SpaceSpec::G1();
      if (head == "MG") return SpaceSpec::MG();
      if (head == "L1") return SpaceSpec::L1();
      if (head == "Linf") return SpaceSpec::linf();
    } else {
      if (head == "Lp") return SpaceSpec::lp(detail::parse_parameter(*arg));
      if (head == "orlicz") return SpaceSpec::orlicz(parse_orlicz(*arg));
      if (head == "lorentz") return SpaceSpec::lorentz(parse_weight(*arg));
      if (head == "marcinkiewicz") return SpaceSpec::marcinkiewicz(parse_weight(*arg));
    }
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DescriptorError("bad space descriptor '" + std::string(descriptor) + "': " + e.what() +
                          "; " + kValidSpaces);
  }
  throw DescriptorError("unknown space descriptor '" + std::string(descriptor) + "'; " +
                        kValidSpaces);
}

ConcaveWeight parse_weight(std::string_view descriptor) {
  const auto [head, arg] = detail::split_descriptor(descriptor);
  try {
    if (!arg) {
      if (head == "logG") return ConcaveWeight::log_g();
      if (head == "logG1") return ConcaveWeight::log_g1();
      if (head == "logPsi") return ConcaveWeight::log_psi();
    } else {
      if (head == "power") return ConcaveWeight::power(detail::parse_parameter(*arg));
      if (head == "envelope") return envelope_weight(parse_space(*arg));
    }
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DescriptorError("bad weight descriptor '" + std::string(descriptor) + "': " + e.what() +
                          "; " + kValidWeights);
  }
  throw DescriptorError("unknown weight descriptor '" + std::string(descriptor) + "'; " +
                        kValidWeights);
}

std::vector<SpaceSpec> catalog_spaces() {
  return {SpaceSpec::G(), SpaceSpec::G1(), SpaceSpec::MG(),
          SpaceSpec::L1(), SpaceSpec::lp(2.0), SpaceSpec::linf()};
}

double ri_norm(const StepFunction& f, const SpaceSpec& E) {
  switch (E.kind()) {
    case SpaceSpec::Kind::Orlicz:
      return luxemburg_norm(f, E.orlicz_function());
    case SpaceSpec::Kind::Lorentz:
      return lorentz_norm(f, E.weight());
    case SpaceSpec::Kind::Marcinkiewicz:
      return marcinkiewicz_norm(f, E.weight());
    case SpaceSpec::Kind::Lp:
      return lp_norm(f, E.exponent());
    case SpaceSpec::Kind::Linf:
      return linf_norm(f);
  }
  throw std::logic_error("unreachable space kind");
}

double fundamental_function(const SpaceSpec& E, double t) {
  require_unit_interval(t, "fundamental_function");
  if (auto closed = E.closed_form_fundamental(t)) return *closed;
  return fundamental_function_generic(E, t);
}

double fundamental_function_generic(const SpaceSpec& E, double t) {
  require_unit_interval(t, "fundamental_function_generic");
  return ri_norm(StepFunction::indicator(t), E);
}

ConcaveWeight envelope_weight(const SpaceSpec& E) {
  return ConcaveWeight::envelope("envelope:" + E.name(), [E](double t) {
    if (t == 0.0) return 0.0;
    return t / fundamental_function(E, t);
  });
}

HingeBound hinge_family_bound(const StepFunction& f, double t) {
  require_unit_interval(t, "hinge_family_bound");
  HingeBound out;
  out.upper = partial_integral(rearrange(f), t);
  out.lower = 0.5 * out.upper;
  out.orlicz_value = luxemburg_norm(f, OrliczFunction::hinge(1.0 / t));
  out.holds = out.lower <= out.orlicz_value + 1e-9 && out.orlicz_value <= out.upper + 1e-9;
  return out;
}

}  // namespace rispace
