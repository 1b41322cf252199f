#include "rispace/rademacher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rispace {

namespace {

void require_enumerable(std::size_t n, const char* what) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxEnumeration)) {
    throw std::out_of_range(std::string(what) + ": need 1 <= n <= 24, got " + std::to_string(n));
  }
}

bool equal_magnitudes(std::span<const double> coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(), [&](double a) {
    return std::fabs(a) == std::fabs(coeffs.front());
  });
}

struct Atom {
  double value;
  std::uint64_t count;
};

// Builds the non-increasing function taking value atoms[i].value on a set of
// measure atoms[i].count / 2^n. Atoms must be sorted by value descending.
StepFunction from_atoms(const std::vector<Atom>& atoms, int n) {
  const double unit = std::ldexp(1.0, -n);
  std::vector<double> ends;
  std::vector<double> values;
  std::uint64_t cum = 0;
  for (const Atom& a : atoms) {
    cum += a.count;
    const double end = static_cast<double>(cum) * unit;
    if (!ends.empty() && end <= ends.back()) continue;
    ends.push_back(end);
    values.push_back(a.value);
  }
  ends.back() = 1.0;
  return StepFunction(std::move(ends), std::move(values));
}

}  // namespace

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) throw std::invalid_argument("sign vector must be non-empty");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("sign vector entries must be +1 or -1");
  }
}

SignVector SignVector::all_plus(std::size_t n) { return SignVector(std::vector<int>(n, 1)); }

SignVector SignVector::from_index(std::size_t n, std::uint64_t index) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = ((index >> (n - 1 - i)) & 1u) ? -1 : 1;
  return SignVector(std::move(s));
}

SignVector SignVector::negated() const {
  std::vector<int> s(signs_);
  for (int& x : s) x = -x;
  return SignVector(std::move(s));
}

std::string SignVector::to_string() const {
  std::string out;
  for (int s : signs_) out += s > 0 ? '+' : '-';
  return out;
}

StepFunction rademacher(int n) {
  if (n < 1 || n > kMaxEnumeration) {
    throw std::out_of_range("rademacher: need 1 <= n <= 24, got " + std::to_string(n));
  }
  const std::size_t count = std::size_t{1} << n;
  const double unit = std::ldexp(1.0, -n);
  std::vector<double> ends(count);
  std::vector<double> values(count);
  for (std::size_t j = 0; j < count; ++j) {
    ends[j] = static_cast<double>(j + 1) * unit;
    values[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  return StepFunction(std::move(ends), std::move(values));
}

StepFunction signed_sum(std::span<const double> coeffs, const SignVector& eps) {
  const std::size_t n = coeffs.size();
  require_enumerable(n, "signed_sum");
  if (eps.size() != n) throw std::invalid_argument("signed_sum: sign vector size mismatch");
  const std::size_t count = std::size_t{1} << n;
  const double unit = std::ldexp(1.0, -static_cast<int>(n));
  std::vector<double> ends(count);
  std::vector<double> values(count);
  for (std::size_t j = 0; j < count; ++j) {
    ends[j] = static_cast<double>(j + 1) * unit;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // r_{i+1} is +1 on even-numbered intervals of length 2^{-(i+1)}.
      const bool negative = ((j >> (n - 1 - i)) & 1u) != 0;
      const double term = eps[i] * coeffs[i];
      s += negative ? -term : term;
    }
    values[j] = s;
  }
  return StepFunction(std::move(ends), std::move(values));
}

StepFunction signed_sum(std::span<const StepFunction> xs, const SignVector& eps) {
  if (xs.size() > static_cast<std::size_t>(kMaxEnumeration)) {
    throw std::out_of_range("signed_sum: at most 24 functions");
  }
  if (eps.size() != xs.size()) throw std::invalid_argument("signed_sum: sign vector size mismatch");
  return SignedFamily(std::vector<StepFunction>(xs.begin(), xs.end())).combine(eps);
}

StepFunction sum_rearrangement_enumerated(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  require_enumerable(n, "sum_rearrangement");
  // Multiset of partial sums, merged after every step. Summation order
  // matches signed_sum, so values agree bit for bit.
  std::vector<Atom> atoms{{0.0, 1}};
  std::vector<Atom> next;
  auto by_value = [](const Atom& a, const Atom& b) { return a.value < b.value; };
  for (std::size_t i = 0; i < n; ++i) {
    next.clear();
    next.reserve(2 * atoms.size());
    for (const Atom& a : atoms) {
      next.push_back({a.value + coeffs[i], a.count});
      next.push_back({a.value + (-coeffs[i]), a.count});
    }
    std::sort(next.begin(), next.end(), by_value);
    atoms.clear();
    for (const Atom& a : next) {
      if (!atoms.empty() && atoms.back().value == a.value) {
        atoms.back().count += a.count;
      } else {
        atoms.push_back(a);
      }
    }
  }
  for (Atom& a : atoms) a.value = std::fabs(a.value);
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value > b.value; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().count += a.count;
    } else {
      merged.push_back(a);
    }
  }
  return from_atoms(merged, static_cast<int>(n));
}

StepFunction sum_rearrangement_binomial(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  if (n < 1 || n > static_cast<std::size_t>(kMaxBinomial)) {
    throw std::out_of_range("sum_rearrangement: binomial path needs 1 <= n <= 60");
  }
  if (!equal_magnitudes(coeffs)) {
    throw std::invalid_argument("sum_rearrangement: binomial path needs equal |a_i|");
  }
  const double a = std::fabs(coeffs.front());
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> r(i + 1, 1);
    for (std::size_t k = 1; k < i; ++k) r[k] = row[k - 1] + row[k];
    row = std::move(r);
  }
  // k plus-signs give |n - 2k| a; k and n-k coincide.
  std::vector<Atom> atoms;
  for (std::size_t k = 0; 2 * k <= n; ++k) {
    const std::uint64_t count = (2 * k == n) ? row[k] : row[k] + row[n - k];
    atoms.push_back({static_cast<double>(n - 2 * k) * a, count});
  }
  if (a == 0.0) atoms = {{0.0, std::uint64_t{1} << n}};
  return from_atoms(atoms, static_cast<int>(n));
}

StepFunction sum_rearrangement(std::span<const double> coeffs) {
  if (!coeffs.empty() && equal_magnitudes(coeffs) &&
      coeffs.size() <= static_cast<std::size_t>(kMaxBinomial)) {
    return sum_rearrangement_binomial(coeffs);
  }
  return sum_rearrangement_enumerated(coeffs);
}

double rademacher_sum_norm(std::span<const double> coeffs, const SpaceSpec& E) {
  return ri_norm(sum_rearrangement(coeffs), E);
}

SignedFamily::SignedFamily(std::vector<StepFunction> xs) : xs_(std::move(xs)) {
  if (xs_.empty()) throw std::invalid_argument("SignedFamily: need at least one function");
  ends_ = common_refinement(xs_);
  lengths_.resize(ends_.size());
  for (std::size_t j = 0; j < ends_.size(); ++j) {
    lengths_[j] = ends_[j] - (j == 0 ? 0.0 : ends_[j - 1]);
  }
  samples_.resize(xs_.size() * ends_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    std::size_t piece = 0;
    for (std::size_t j = 0; j < ends_.size(); ++j) {
      while (xs_[i].right(piece) < ends_[j]) ++piece;
      samples_[i * ends_.size() + j] = xs_[i].value(piece);
    }
  }
}

void SignedFamily::values(const SignVector& eps, std::vector<double>& out) const {
  if (eps.size() != xs_.size()) throw std::invalid_argument("SignedFamily: sign vector size mismatch");
  const std::size_t m = ends_.size();
  out.assign(m, 0.0);
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double* row = samples_.data() + i * m;
    const double s = eps[i];
    for (std::size_t j = 0; j < m; ++j) out[j] += s * row[j];
  }
}

StepFunction SignedFamily::combine(const SignVector& eps) const {
  std::vector<double> v;
  values(eps, v);
  return StepFunction(ends_, std::move(v));
}

double SignedFamily::modular(const SignVector& eps, const OrliczFunction& phi,
                             double lambda) const {
  if (!(lambda > 0.0)) throw std::domain_error("modular: lambda must be positive");
  std::vector<double> v;
  values(eps, v);
  const double inv = 1.0 / lambda;
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0.0) s += phi(v[j] * inv) * lengths_[j];
  }
  return s;
}

}  // namespace rispace
