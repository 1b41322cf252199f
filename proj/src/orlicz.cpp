#include "rispace/orlicz.hpp"

#include <cmath>
#include <limits>

#include "descriptor_util.hpp"

namespace rispace {

namespace {

constexpr double kRelativeWidth = 1e-12;
constexpr int kMaxBisection = 200;
constexpr int kMaxBracketSteps = 2100;

void validate_orlicz(const std::string& name, const std::function<double(double)>& phi) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("Orlicz function '" + name + "' rejected: " + why);
  };
  if (phi(0.0) != 0.0) fail("Phi(0) != 0");
  constexpr int kPoints = 101;
  double prev = 0.0;
  double prev_s = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double s = std::pow(10.0, -3.0 + 6.0 * i / (kPoints - 1));
    const double v = phi(s);
    const double w = phi(-s);
    if (std::isnan(v) || std::isnan(w)) fail("NaN at s = " + std::to_string(s));
    if (v < 0.0) fail("negative value");
    if (std::isfinite(v) && std::fabs(v - w) > 1e-12 * std::fabs(v)) fail("not even");
    if (v < prev) fail("decreasing on [0, inf)");
    if (std::isfinite(v)) {
      const double mid = phi(0.5 * (s + prev_s));
      if (mid > 0.5 * (v + prev) * (1.0 + 1e-12) + 1e-300) fail("midpoint convexity fails");
      const double sym = phi(0.5 * (s - prev_s));
      if (sym > 0.5 * (v + prev) * (1.0 + 1e-12) + 1e-300) fail("midpoint convexity fails");
    }
    prev = v;
    prev_s = s;
  }
}

}  // namespace

OrliczFunction::OrliczFunction(Kind kind, double param, std::string name)
    : kind_(kind), param_(param), name_(std::move(name)) {}

OrliczFunction OrliczFunction::exp_square() {
  return OrliczFunction(Kind::ExpSquareMinusOne, 0.0, "exp2");
}

OrliczFunction OrliczFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("power Orlicz function needs finite p >= 1");
  }
  return OrliczFunction(Kind::Power, p, "power:" + detail::format_parameter(p));
}

OrliczFunction OrliczFunction::hinge(double a) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("hinge Orlicz function needs finite a >= 0");
  }
  return OrliczFunction(Kind::Hinge, a, "hinge:" + detail::format_parameter(a));
}

OrliczFunction OrliczFunction::custom(std::string name, std::function<double(double)> phi) {
  validate_orlicz(name, phi);
  OrliczFunction out(Kind::Custom, 0.0, std::move(name));
  out.custom_ = std::make_shared<const std::function<double(double)>>(std::move(phi));
  return out;
}

double OrliczFunction::operator()(double s) const {
  switch (kind_) {
    case Kind::ExpSquareMinusOne:
      return std::expm1(s * s);
    case Kind::Power: {
      const double a = std::fabs(s);
      if (param_ == 1.0) return a;
      if (param_ == 2.0) return a * a;
      return std::pow(a, param_);
    }
    case Kind::Hinge:
      return std::max(std::fabs(s) - param_, 0.0);
    case Kind::Custom:
      return (*custom_)(s);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

OrliczFunction parse_orlicz(std::string_view descriptor) {
  static const char* kValid = "valid Orlicz descriptors: exp2, power:<p>=1>, hinge:<a>=0>";
  const auto [head, arg] = detail::split_descriptor(descriptor);
  try {
    if (head == "exp2" && !arg) return OrliczFunction::exp_square();
    if (head == "power" && arg) return OrliczFunction::power(detail::parse_parameter(*arg));
    if (head == "hinge" && arg) return OrliczFunction::hinge(detail::parse_parameter(*arg));
  } catch (const std::invalid_argument& e) {
    throw DescriptorError("bad Orlicz descriptor '" + std::string(descriptor) + "': " + e.what() +
                          "; " + kValid);
  }
  throw DescriptorError("unknown Orlicz descriptor '" + std::string(descriptor) + "'; " + kValid);
}

double modular(const StepFunction& f, const OrliczFunction& phi, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("modular: lambda must be positive");
  const double inv = 1.0 / lambda;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f.value(i);
    if (v == 0.0) continue;
    s += phi(v * inv) * f.length(i);
  }
  return s;
}

double luxemburg_norm(const StepFunction& f, const OrliczFunction& phi) {
  const double sup = linf_norm(f);
  if (sup == 0.0) return 0.0;
  double lo = sup;
  double hi = sup;
  if (modular(f, phi, sup) > 1.0) {
    int steps = 0;
    do {
      lo = hi;
      hi *= 2.0;
      if (++steps > kMaxBracketSteps || std::isinf(hi)) {
        throw std::runtime_error("luxemburg_norm: no feasible lambda found");
      }
    } while (modular(f, phi, hi) > 1.0);
  } else {
    int steps = 0;
    do {
      hi = lo;
      lo *= 0.5;
      // Phi vanishing on a neighbourhood of 0 can leave every lambda feasible.
      if (++steps > kMaxBracketSteps || lo == 0.0) return 0.0;
    } while (modular(f, phi, lo) <= 1.0);
  }
  for (int i = 0; i < kMaxBisection && hi - lo > kRelativeWidth * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (modular(f, phi, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace rispace
