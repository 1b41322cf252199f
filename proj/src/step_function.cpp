#include "rispace/step_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rispace {

namespace {

// Builds a function from consecutive lengths. Rounded cumulative sums that
// fail to advance are dropped; the last end is pinned to 1.
StepFunction from_lengths(const std::vector<double>& values,
                          const std::vector<double>& lengths) {
  std::vector<double> ends;
  std::vector<double> vals;
  ends.reserve(values.size());
  vals.reserve(values.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cum += lengths[i];
    if (!ends.empty() && cum <= ends.back()) continue;
    if (cum >= 1.0) break;
    ends.push_back(cum);
    vals.push_back(values[i]);
  }
  // Whatever did not fit below 1 becomes the final interval.
  const std::size_t placed = vals.size();
  if (placed < values.size()) {
    ends.push_back(1.0);
    vals.push_back(values[placed]);
  } else {
    ends.back() = 1.0;
  }
  return StepFunction(std::move(ends), std::move(vals));
}

double parse_double(std::string_view token, int line) {
  double out = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "not a number: '" + std::string(token) + "'");
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

StepFunction::StepFunction() : ends_{1.0}, values_{0.0} {}

StepFunction::StepFunction(std::vector<double> ends, std::vector<double> values)
    : ends_(std::move(ends)), values_(std::move(values)) {
  if (ends_.empty()) throw std::invalid_argument("step function needs at least one interval");
  if (ends_.size() != values_.size()) {
    throw std::invalid_argument("step function: breakpoint and value counts differ");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < ends_.size(); ++i) {
    if (!(ends_[i] > prev)) {
      throw std::invalid_argument("step function: breakpoints must be strictly increasing in (0,1]");
    }
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("step function: values must be finite");
    }
    prev = ends_[i];
  }
  if (ends_.back() != 1.0) throw std::invalid_argument("step function: last breakpoint must be 1");
  canonicalize();
}

StepFunction StepFunction::constant(double c) { return StepFunction({1.0}, {c}); }

StepFunction StepFunction::indicator(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("indicator: t must lie in [0,1]");
  if (t == 0.0) return StepFunction();
  if (t == 1.0) return constant(1.0);
  return StepFunction({t, 1.0}, {1.0, 0.0});
}

void StepFunction::canonicalize() {
  std::size_t w = 0;
  for (std::size_t i = 1; i < ends_.size(); ++i) {
    if (values_[i] == values_[w]) {
      ends_[w] = ends_[i];
    } else {
      ++w;
      ends_[w] = ends_[i];
      values_[w] = values_[i];
    }
  }
  ends_.resize(w + 1);
  values_.resize(w + 1);
}

double StepFunction::operator()(double t) const {
  auto it = std::lower_bound(ends_.begin(), ends_.end(), t);
  if (it == ends_.end()) return values_.back();
  return values_[static_cast<std::size_t>(it - ends_.begin())];
}

bool StepFunction::is_nonincreasing() const {
  return std::is_sorted(values_.rbegin(), values_.rend());
}

bool StepFunction::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

bool StepFunction::is_zero() const { return size() == 1 && values_[0] == 0.0; }

StepFunction StepFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return StepFunction(ends_, std::move(v));
}

StepFunction StepFunction::abs() const {
  std::vector<double> v(values_);
  for (double& x : v) x = std::fabs(x);
  return StepFunction(ends_, std::move(v));
}

StepFunction rearrange(const StepFunction& f) {
  struct Piece {
    double value;
    double length;
  };
  std::vector<Piece> pieces;
  pieces.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    pieces.push_back({std::fabs(f.value(i)), f.length(i)});
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& a, const Piece& b) { return a.value > b.value; });
  std::vector<double> values;
  std::vector<double> lengths;
  for (const Piece& p : pieces) {
    if (!values.empty() && values.back() == p.value) {
      lengths.back() += p.length;
    } else {
      values.push_back(p.value);
      lengths.push_back(p.length);
    }
  }
  return from_lengths(values, lengths);
}

double integral(const StepFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.value(i) * f.length(i);
  return s;
}

double partial_integral(const StepFunction& f, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("partial_integral: t must lie in [0,1]");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.left(i);
    if (a >= t) break;
    s += f.value(i) * (std::min(f.right(i), t) - a);
  }
  return s;
}

double stieltjes(const StepFunction& f, const std::function<double(double)>& phi) {
  double s = 0.0;
  double prev = phi(0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double cur = phi(f.right(i));
    s += f.value(i) * (cur - prev);
    prev = cur;
  }
  return s;
}

double l1_norm(const StepFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(f.value(i)) * f.length(i);
  return s;
}

double linf_norm(const StepFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::fabs(v));
  return m;
}

double lp_norm(const StepFunction& f, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
  if (std::isinf(p)) return linf_norm(f);
  if (p == 1.0) return l1_norm(f);
  // Scale by the sup norm so large values cannot overflow pow.
  const double m = linf_norm(f);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += std::pow(std::fabs(f.value(i)) / m, p) * f.length(i);
  }
  return m * std::pow(s, 1.0 / p);
}

double measure_above(const StepFunction& f, double c) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::fabs(f.value(i)) > c) m += f.length(i);
  }
  return m;
}

std::vector<double> common_refinement(std::span<const StepFunction> fs) {
  std::vector<double> ends;
  for (const auto& f : fs) ends.insert(ends.end(), f.ends().begin(), f.ends().end());
  if (ends.empty()) return {1.0};
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  return ends;
}

StepFunction linear_combination(std::span<const StepFunction> fs, std::span<const double> coeffs) {
  if (fs.size() != coeffs.size()) {
    throw std::invalid_argument("linear_combination: size mismatch");
  }
  std::vector<double> ends = common_refinement(fs);
  std::vector<double> values(ends.size(), 0.0);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const auto& f = fs[j];
    std::size_t piece = 0;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      while (f.right(piece) < ends[i]) ++piece;
      values[i] += coeffs[j] * f.value(piece);
    }
  }
  return StepFunction(std::move(ends), std::move(values));
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

StepFunction read_step_function(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<double> ends;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    if (!header) {
      std::string magic;
      std::string version;
      std::string extra;
      ls >> magic >> version;
      if (magic != "stepfn" || version != "v1" || (ls >> extra)) {
        throw ParseError(lineno, "expected header 'stepfn v1'");
      }
      header = true;
      continue;
    }
    std::string ts;
    std::string vs;
    std::string extra;
    if (!(ls >> ts >> vs) || (ls >> extra)) {
      throw ParseError(lineno, "expected two fields 't v'");
    }
    const double t = parse_double(ts, lineno);
    const double v = parse_double(vs, lineno);
    if (!std::isfinite(v)) throw ParseError(lineno, "value must be finite");
    if (!(t > (ends.empty() ? 0.0 : ends.back()) && t <= 1.0)) {
      throw ParseError(lineno, "breakpoint must be strictly increasing in (0,1]");
    }
    if (!ends.empty() && ends.back() == 1.0) {
      throw ParseError(lineno, "data after the final breakpoint 1");
    }
    ends.push_back(t);
    values.push_back(v);
  }
  if (!header) throw ParseError(lineno == 0 ? 1 : lineno, "missing header 'stepfn v1'");
  if (ends.empty()) throw ParseError(lineno, "no intervals");
  if (ends.back() != 1.0) throw ParseError(lineno, "last breakpoint must be 1");
  return StepFunction(std::move(ends), std::move(values));
}

StepFunction parse_step_function(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_step_function(in);
}

StepFunction load_step_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_step_function(in);
}

void write_step_function(std::ostream& out, const StepFunction& f) {
  out << "stepfn v1\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.right(i)) << ' ' << format_double(f.value(i)) << '\n';
  }
}

std::string format_step_function(const StepFunction& f) {
  std::ostringstream out;
  write_step_function(out, f);
  return out.str();
}

void save_step_function(const std::string& path, const StepFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_step_function(out, f);
}

}  // namespace rispace
