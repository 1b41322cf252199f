#include "rispace/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "descriptor_util.hpp"

namespace rispace {

namespace {

constexpr double kSlopeSlack = 1e-9;
constexpr double kGoldenTol = 1e-10;
constexpr int kGuardPoints = 1024;
constexpr double kGuardFloor = 1e-12;

std::vector<double> sample_grid() {
  std::vector<double> t{0.0};
  for (int i = 0; i <= 100; ++i) t.push_back(std::pow(10.0, -12.0 + 12.0 * i / 100.0));
  for (int i = 1; i <= 100; ++i) t.push_back(i / 100.0);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

WeightDiagnostics sample_weight(const std::function<double(double)>& phi,
                                bool concavity_is_warning) {
  static const std::vector<double> grid = sample_grid();
  WeightDiagnostics d;
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v[i] = phi(grid[i]);
    if (!std::isfinite(v[i])) {
      d.errors.push_back("non-finite value at t = " + detail::format_parameter(grid[i]));
      d.valid = false;
      return d;
    }
  }
  d.at_zero_plus = phi(1e-12);
  d.at_one = v.back();
  if (v[0] != 0.0) {
    d.vanishes_at_zero = false;
    d.errors.push_back("phi(0) = " + detail::format_parameter(v[0]) + ", expected 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (v[i] <= 0.0) d.positive = false;
    if (v[i] < v[i - 1] - 1e-12 * std::fabs(v[i - 1])) d.monotone = false;
  }
  if (!d.positive) d.errors.push_back("phi vanishes somewhere in (0,1]");
  if (!d.monotone) d.errors.push_back("phi is not non-decreasing");
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double slope = (v[i] - v[i - 1]) / (grid[i] - grid[i - 1]);
    if (std::isfinite(prev_slope) &&
        slope > prev_slope + kSlopeSlack * std::max(1.0, std::fabs(prev_slope))) {
      d.concave = false;
      break;
    }
    prev_slope = slope;
  }
  if (!d.concave) {
    const std::string msg = "phi is not concave on the sample grid";
    if (concavity_is_warning) {
      d.warnings.push_back(msg);
    } else {
      d.errors.push_back(msg);
    }
  }
  if (d.at_one != 1.0) {
    d.warnings.push_back("phi(1) = " + detail::format_parameter(d.at_one) + " != 1");
  }
  d.valid = d.errors.empty();
  return d;
}

void require_valid(const ConcaveWeight& phi) {
  const auto& d = phi.diagnostics();
  if (!d.valid) {
    throw std::invalid_argument("invalid weight '" + phi.descriptor() + "': " + d.errors.front());
  }
}

// Piecewise-linear primitive of a non-increasing step function.
struct Primitive {
  const StepFunction& f;
  std::vector<double> at_end;

  explicit Primitive(const StepFunction& g) : f(g), at_end(g.size()) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      s += g.value(i) * g.length(i);
      at_end[i] = s;
    }
  }
  double on_segment(std::size_t i, double t) const {
    const double base = i == 0 ? 0.0 : at_end[i - 1];
    return base + f.value(i) * (t - f.left(i));
  }
  std::size_t segment_of(double t) const {
    auto it = std::lower_bound(f.ends().begin(), f.ends().end(), t);
    if (it == f.ends().end()) return f.size() - 1;
    return static_cast<std::size_t>(it - f.ends().begin());
  }
};

SupResult sup_search(const StepFunction& f, const ConcaveWeight& phi) {
  const StepFunction x = rearrange(f);
  if (x.is_zero()) return {0.0, 1.0};
  const Primitive F(x);
  SupResult best{-1.0, 1.0};
  auto ratio = [&](std::size_t seg, double t) {
    const double w = phi(t);
    if (!(w > 0.0)) {
      throw std::domain_error("weight '" + phi.descriptor() + "' vanishes at t = " +
                              detail::format_parameter(t));
    }
    return F.on_segment(seg, t) / w;
  };
  auto consider = [&](std::size_t seg, double t) {
    const double g = ratio(seg, t);
    if (g > best.value) best = {g, t};
  };

  constexpr double kInvPhi = 0.6180339887498949;
  for (std::size_t i = 0; i < x.size(); ++i) {
    consider(i, x.right(i));
    double a = i == 0 ? x.right(0) * kGuardFloor : x.left(i);
    double b = x.right(i);
    const double tol = kGoldenTol * b;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double gc = ratio(i, c);
    double gd = ratio(i, d);
    while (b - a > tol) {
      if (gc >= gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - kInvPhi * (b - a);
        gc = ratio(i, c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + kInvPhi * (b - a);
        gd = ratio(i, d);
      }
    }
    consider(i, gc >= gd ? c : d);
  }
  for (int k = 0; k < kGuardPoints; ++k) {
    const double t = std::pow(10.0, std::log10(kGuardFloor) * (1.0 - k / double(kGuardPoints - 1)));
    consider(F.segment_of(t), t);
  }
  return best;
}

}  // namespace

ConcaveWeight::ConcaveWeight(Kind kind, double param, std::string name,
                             std::shared_ptr<const std::function<double(double)>> fn)
    : kind_(kind), param_(param), name_(std::move(name)), fn_(std::move(fn)) {
  const bool lenient = kind_ == Kind::Envelope;
  diagnostics_ = std::make_shared<const WeightDiagnostics>(
      sample_weight([this](double t) { return (*this)(t); }, lenient));
}

ConcaveWeight ConcaveWeight::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("power weight needs 0 < alpha <= 1");
  }
  return ConcaveWeight(Kind::Power, alpha, "power:" + detail::format_parameter(alpha), nullptr);
}

ConcaveWeight ConcaveWeight::log_g() { return ConcaveWeight(Kind::LogG, 0.0, "logG", nullptr); }
ConcaveWeight ConcaveWeight::log_g1() { return ConcaveWeight(Kind::LogG1, 0.0, "logG1", nullptr); }
ConcaveWeight ConcaveWeight::log_psi() {
  return ConcaveWeight(Kind::LogPsi, 0.0, "logPsi", nullptr);
}

ConcaveWeight ConcaveWeight::custom(std::string name, std::function<double(double)> phi) {
  return ConcaveWeight(Kind::Custom, 0.0, std::move(name),
                       std::make_shared<const std::function<double(double)>>(std::move(phi)));
}

ConcaveWeight ConcaveWeight::envelope(std::string name, std::function<double(double)> phi) {
  return ConcaveWeight(Kind::Envelope, 0.0, std::move(name),
                       std::make_shared<const std::function<double(double)>>(std::move(phi)));
}

double ConcaveWeight::operator()(double t) const {
  switch (kind_) {
    case Kind::Power:
      return t == 0.0 ? 0.0 : (param_ == 1.0 ? t : std::pow(t, param_));
    case Kind::LogG:
      return t == 0.0 ? 0.0 : t * std::sqrt(1.0 - std::log(t));
    case Kind::LogG1:
      return t == 0.0 ? 0.0 : 2.0 / std::sqrt(2.0 - std::log(t));
    case Kind::LogPsi:
      return t == 0.0 ? 0.0 : 2.0 / std::sqrt(4.0 - std::log(t));
    case Kind::Envelope:
    case Kind::Custom:
      return (*fn_)(t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

WeightDiagnostics validate_weight(const ConcaveWeight& phi) { return phi.diagnostics(); }

double stieltjes(const StepFunction& f, const ConcaveWeight& phi) {
  require_valid(phi);
  return stieltjes(f, [&phi](double t) { return phi(t); });
}

double lorentz_norm(const StepFunction& f, const ConcaveWeight& phi) {
  require_valid(phi);
  return stieltjes(rearrange(f), [&phi](double t) { return phi(t); });
}

SupResult marcinkiewicz_sup(const StepFunction& f, const ConcaveWeight& phi) {
  require_valid(phi);
  return sup_search(f, phi);
}

SupResult marcinkiewicz_sup_unchecked(const StepFunction& f, const ConcaveWeight& phi) {
  return sup_search(f, phi);
}

}  // namespace rispace
