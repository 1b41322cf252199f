#include "rispace/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rispace/parallel.hpp"
#include "rispace/random.hpp"
#include "rispace/weights.hpp"

namespace rispace {

namespace {

using i64 = std::int64_t;

i64 I(std::size_t v) { return static_cast<i64>(v); }
i64 I(int v) { return static_cast<i64>(v); }
Cell S(std::string s) { return Cell(std::move(s)); }

double relative_error(double got, double want) {
  const double scale = std::max(std::fabs(got), std::fabs(want));
  return scale == 0.0 ? 0.0 : std::fabs(got - want) / scale;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  if (points == 1) {
    t[0] = hi;
    return t;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < points; ++k) t[k] = std::pow(10.0, a + (b - a) * k / (points - 1));
  t.front() = lo;
  t.back() = hi;
  return t;
}

void require_positive(int v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string(what) + " must be positive");
}

void require_sign_size(std::size_t n, const char* what) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxSignSearch)) {
    throw std::out_of_range(std::string(what) + ": need 1 <= n <= 20, got " + std::to_string(n));
  }
}

const std::vector<OrliczFunction>& sign_test_functions() {
  static const std::vector<OrliczFunction> phis{OrliczFunction::power(1.0), OrliczFunction::power(2.0),
                                                OrliczFunction::exp_square()};
  return phis;
}

std::vector<double> l1_norms(std::span<const StepFunction> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(l1_norm(x));
  return out;
}

// Sum over all sign completions eps_k..eps_{n-1} of the modular of
// prefix + sum eps_j x_j. Accumulation order matches SignedFamily::values.
class CompletionSums {
 public:
  CompletionSums(const SignedFamily& fam, const OrliczFunction& phi, double lambda)
      : fam_(fam), phi_(phi), inv_(1.0 / lambda), levels_(fam.size() + 1) {
    for (auto& l : levels_) l.resize(fam.interval_count());
  }

  double total(const std::vector<double>& prefix, std::size_t k) {
    levels_[k] = prefix;
    return descend(k);
  }

  double leaf(const std::vector<double>& v) const {
    const auto len = fam_.lengths();
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0.0) s += phi_(v[j] * inv_) * len[j];
    }
    return s;
  }

 private:
  double descend(std::size_t k) {
    if (k == fam_.size()) return leaf(levels_[k]);
    const auto row = fam_.samples(k);
    const auto& cur = levels_[k];
    auto& next = levels_[k + 1];
    double s = 0.0;
    for (int sign : {1, -1}) {
      for (std::size_t j = 0; j < cur.size(); ++j) next[j] = cur[j] + sign * row[j];
      s += descend(k + 1);
    }
    return s;
  }

  const SignedFamily& fam_;
  const OrliczFunction& phi_;
  double inv_;
  std::vector<std::vector<double>> levels_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Rademacher norms

ExperimentReport theorem1_report(const SpaceSpec& E, int n_max, int trials, std::uint64_t seed,
                                 int random_n_max) {
  if (n_max < 1 || n_max > kMaxBinomial) throw std::out_of_range("theorem1: n_max must be in [1,60]");
  if (trials < 0) throw std::invalid_argument("theorem1: trials must be non-negative");
  if (random_n_max < 0) random_n_max = n_max;
  random_n_max = std::min(random_n_max, n_max);
  if (trials > 0 && random_n_max > kMaxEnumeration) {
    throw std::out_of_range("theorem1: random coefficient vectors need n <= 24");
  }
  constexpr double kWindowEqual = 3.0;
  constexpr double kStabilization = 0.05;
  constexpr double kWindowRandom = 4.0;

  ExperimentReport r;
  r.name = "theorem1";
  r.parameters = {{"space", S(E.name())},        {"n_max", I(n_max)}, {"trials", I(trials)},
                  {"random_n_max", I(random_n_max)}, {"seed", I(static_cast<std::size_t>(seed))}};
  r.tolerances = {{"equal_window_max", kWindowEqual},
                  {"stabilization_max", kStabilization},
                  {"random_window_max", kWindowRandom}};

  std::vector<double> equal_ratio(static_cast<std::size_t>(n_max));
  std::vector<double> equal_norm(equal_ratio.size());
  parallel_for(equal_ratio.size(), [&](std::size_t k) {
    const int n = static_cast<int>(k) + 1;
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    equal_norm[k] = rademacher_sum_norm(ones, E);
    equal_ratio[k] = equal_norm[k] / std::sqrt(double(n));
  });
  auto& eq = r.add_table("equal_coefficients", {"n", "norm", "ratio"});
  for (std::size_t k = 0; k < equal_ratio.size(); ++k) {
    eq.rows.push_back({I(k + 1), equal_norm[k], equal_ratio[k]});
  }
  const auto [emin, emax] = std::minmax_element(equal_ratio.begin(), equal_ratio.end());
  const double equal_window = *emax / *emin;

  struct Case {
    int n;
    int trial;
    std::vector<double> a;
  };
  std::vector<Case> cases;
  Rng rng(seed);
  for (int n = 1; trials > 0 && n <= random_n_max; ++n) {
    for (int t = 0; t < trials; ++t) cases.push_back({n, t, random_unit_vector(rng, n)});
  }
  std::vector<double> rnorm(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { rnorm[i] = rademacher_sum_norm(cases[i].a, E); });
  auto& rt = r.add_table("random_coefficients", {"n", "trial", "l2", "norm", "ratio"});
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    double l2 = 0.0;
    for (double x : cases[i].a) l2 += x * x;
    l2 = std::sqrt(l2);
    const double ratio = rnorm[i] / l2;
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
    rt.rows.push_back({I(cases[i].n), I(cases[i].trial), l2, rnorm[i], ratio});
  }

  r.summary = {{"equal_ratio_min", *emin}, {"equal_ratio_max", *emax}, {"equal_window", equal_window}};
  bool pass = std::isfinite(equal_window) && equal_window <= kWindowEqual;
  if (n_max >= 16) {
    const auto [smin, smax] = std::minmax_element(equal_ratio.begin() + 11, equal_ratio.begin() + 16);
    const double variation = (*smax - *smin) / *smin;
    r.summary.emplace_back("stabilization_12_16", variation);
    pass = pass && variation < kStabilization;
  }
  if (!cases.empty()) {
    const double random_window = rmax / rmin;
    r.summary.emplace_back("random_ratio_min", rmin);
    r.summary.emplace_back("random_ratio_max", rmax);
    r.summary.emplace_back("random_window", random_window);
    pass = pass && std::isfinite(random_window) && random_window <= kWindowRandom;
  }
  r.pass = pass;
  return r;
}

// ---------------------------------------------------------------------------
// Sign selection

SignSearchResult sign_bruteforce(std::span<const StepFunction> xs, const SpaceSpec& E) {
  const std::size_t n = xs.size();
  require_sign_size(n, "sign_bruteforce");
  const SignedFamily fam(std::vector<StepFunction>(xs.begin(), xs.end()));
  // ||sum eps x|| = ||sum (-eps) x||, so the lexicographically first maximizer
  // starts with +1 and only the first half of the patterns is searched.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  SignSearchResult best{SignVector::all_plus(n), -1.0};
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    SignVector eps = SignVector::from_index(n, mask);
    const double v = ri_norm(fam.combine(eps), E);
    if (v > best.best) best = {std::move(eps), v};
  }
  return best;
}

SignInequality evaluate_sign_inequality(std::span<const StepFunction> xs, const OrliczFunction& phi) {
  const std::size_t n = xs.size();
  require_sign_size(n, "orlicz_sign_inequality");
  const SignedFamily fam(std::vector<StepFunction>(xs.begin(), xs.end()));
  const std::uint64_t half = std::uint64_t{1} << (n - 1);

  SignInequality out;
  out.maximizer = SignVector::all_plus(n);
  out.lhs = -1.0;
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    SignVector eps = SignVector::from_index(n, mask);
    const StepFunction f = fam.combine(eps);
    const double v = luxemburg_norm(f, phi);
    if (v > out.lhs) {
      out.lhs = v;
      out.maximizer = eps;
    }
    out.l1_best = std::max(out.l1_best, l1_norm(f));
  }

  const StepFunction rademacher_sum = sum_rearrangement(l1_norms(xs));
  out.rhs = luxemburg_norm(rademacher_sum, phi);
  if (out.lhs == 0.0) {
    out.pass = out.rhs <= kInequalitySlack;
    return out;
  }
  // The averaging argument at lambda = lhs:
  // Ave_eta Phi(sum eta_i ||x_i||_1 / lhs) <= Ave_eps modular <= 1.
  out.rademacher_modular = modular(rademacher_sum, phi, out.lhs);
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    const double m = fam.modular(SignVector::from_index(n, mask), phi, out.lhs);
    total += m;
    out.max_modular = std::max(out.max_modular, m);
  }
  out.average_modular = total / static_cast<double>(half);
  out.pass = out.lhs >= out.rhs - kInequalitySlack &&
             out.rademacher_modular <= out.average_modular + kInequalitySlack &&
             out.max_modular <= 1.0 + kInequalitySlack;
  return out;
}

ExperimentReport orlicz_sign_inequality(std::span<const StepFunction> xs, const OrliczFunction& phi) {
  const SignInequality s = evaluate_sign_inequality(xs, phi);
  ExperimentReport r;
  r.name = "orlicz_sign_inequality";
  r.parameters = {{"n", I(xs.size())}, {"phi", S(phi.descriptor())}};
  r.tolerances = {{"inequality_slack", kInequalitySlack}};
  auto& t = r.add_table("instance", {"lhs", "rhs", "ratio", "maximizer", "rademacher_modular",
                                     "average_modular", "max_modular", "l1_best", "l1_ratio"});
  const double ratio = s.rhs > 0.0 ? s.lhs / s.rhs : std::numeric_limits<double>::infinity();
  const double l1_ratio = s.rhs > 0.0 ? s.l1_best / s.rhs : std::numeric_limits<double>::infinity();
  t.rows.push_back({s.lhs, s.rhs, ratio, S(s.maximizer.to_string()), s.rademacher_modular,
                    s.average_modular, s.max_modular, s.l1_best, l1_ratio});
  r.summary = {{"lhs", s.lhs}, {"rhs", s.rhs}, {"ratio", ratio}, {"l1_ratio", l1_ratio}};
  r.pass = s.pass;
  return r;
}

double average_modular(std::span<const StepFunction> xs, const OrliczFunction& phi, double lambda) {
  require_sign_size(xs.size(), "average_modular");
  if (!(lambda > 0.0)) throw std::domain_error("average_modular: lambda must be positive");
  const SignedFamily fam(std::vector<StepFunction>(xs.begin(), xs.end()));
  CompletionSums sums(fam, phi, lambda);
  const std::vector<double> zero(fam.interval_count(), 0.0);
  return sums.total(zero, 0) / std::ldexp(1.0, static_cast<int>(xs.size()));
}

SignVector derandomized_signs(std::span<const StepFunction> xs, const OrliczFunction& phi,
                              double lambda) {
  const std::size_t n = xs.size();
  require_sign_size(n, "derandomized_signs");
  if (!(lambda > 0.0)) throw std::domain_error("derandomized_signs: lambda must be positive");
  const SignedFamily fam(std::vector<StepFunction>(xs.begin(), xs.end()));
  CompletionSums sums(fam, phi, lambda);
  std::vector<double> prefix(fam.interval_count(), 0.0);
  std::vector<double> plus(prefix.size());
  std::vector<double> minus(prefix.size());
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = fam.samples(i);
    for (std::size_t j = 0; j < prefix.size(); ++j) {
      plus[j] = prefix[j] + 1 * row[j];
      minus[j] = prefix[j] + -1 * row[j];
    }
    // Both branches have 2^{n-i-1} completions, so comparing totals
    // compares conditional averages.
    const double up = sums.total(plus, i + 1);
    const double down = sums.total(minus, i + 1);
    signs[i] = up >= down ? 1 : -1;
    prefix = signs[i] > 0 ? plus : minus;
  }
  return SignVector(std::move(signs));
}

ExperimentReport sign_suite(int n_max, int trials, std::uint64_t seed) {
  if (n_max < 1 || n_max > kMaxSignSearch) throw std::out_of_range("sign suite: n must be in [1,20]");
  require_positive(trials, "trials");
  struct Case {
    std::vector<StepFunction> xs;
    std::size_t phi;
  };
  const auto& phis = sign_test_functions();
  std::vector<Case> cases;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) {
    const int n = rng.uniform_int(1, n_max);
    Case c{{}, static_cast<std::size_t>(k) % phis.size()};
    for (int i = 0; i < n; ++i) c.xs.push_back(random_step_function(rng));
    cases.push_back(std::move(c));
  }
  std::vector<SignInequality> res(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) {
    res[k] = evaluate_sign_inequality(cases[k].xs, phis[cases[k].phi]);
  });

  ExperimentReport r;
  r.name = "sign";
  r.parameters = {{"n_max", I(n_max)}, {"trials", I(trials)}, {"seed", I(static_cast<std::size_t>(seed))},
                  {"phis", S("power:1,power:2,exp2")}};
  r.tolerances = {{"inequality_slack", kInequalitySlack}};
  auto& t = r.add_table("instances", {"index", "n", "phi", "lhs", "rhs", "ratio", "maximizer",
                                      "rademacher_modular", "average_modular", "l1_best", "l1_ratio",
                                      "pass"});
  i64 violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double l1_min = std::numeric_limits<double>::infinity();
  double l1_max = 0.0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& s = res[k];
    const double ratio = s.rhs > 0.0 ? s.lhs / s.rhs : std::numeric_limits<double>::infinity();
    const double l1_ratio = s.rhs > 0.0 ? s.l1_best / s.rhs : std::numeric_limits<double>::infinity();
    if (!s.pass) ++violations;
    min_ratio = std::min(min_ratio, ratio);
    l1_min = std::min(l1_min, l1_ratio);
    l1_max = std::max(l1_max, l1_ratio);
    t.rows.push_back({I(k), I(cases[k].xs.size()), S(phis[cases[k].phi].descriptor()), s.lhs, s.rhs,
                      ratio, S(s.maximizer.to_string()), s.rademacher_modular, s.average_modular,
                      s.l1_best, l1_ratio, s.pass});
  }
  r.summary = {{"violations", violations},
               {"min_lhs_over_rhs", min_ratio},
               {"l1_form_ratio_min", l1_min},
               {"l1_form_ratio_max", l1_max}};
  r.pass = violations == 0;
  return r;
}

ExperimentReport derandomization_suite(int n_max, int trials, std::uint64_t seed) {
  if (n_max < 1 || n_max > kMaxSignSearch) {
    throw std::out_of_range("derandomization suite: n must be in [1,20]");
  }
  require_positive(trials, "trials");
  struct Case {
    std::vector<StepFunction> xs;
    std::size_t phi;
  };
  struct Outcome {
    double lambda = 0.0;
    SignVector signs = SignVector::all_plus(1);
    double greedy = 0.0;
    double average = 0.0;
    double maximum = 0.0;
    double rademacher = 0.0;
    double fraction_above = 0.0;
    double greedy_norm = 0.0;
  };
  const auto& phis = sign_test_functions();
  std::vector<Case> cases;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) {
    const int n = rng.uniform_int(1, n_max);
    Case c{{}, static_cast<std::size_t>(k) % phis.size()};
    for (int i = 0; i < n; ++i) c.xs.push_back(random_step_function(rng));
    cases.push_back(std::move(c));
  }
  std::vector<Outcome> res(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) {
    const auto& xs = cases[k].xs;
    const auto& phi = phis[cases[k].phi];
    const std::size_t n = xs.size();
    const StepFunction rsum = sum_rearrangement(l1_norms(xs));
    Outcome o;
    o.lambda = luxemburg_norm(rsum, phi);
    if (o.lambda == 0.0) o.lambda = 1.0;
    o.signs = derandomized_signs(xs, phi, o.lambda);
    const SignedFamily fam(xs);
    o.greedy = fam.modular(o.signs, phi, o.lambda);
    o.greedy_norm = luxemburg_norm(fam.combine(o.signs), phi);
    o.rademacher = modular(rsum, phi, o.lambda);
    // Enumeration oracle, independent of the completion recursion.
    const std::uint64_t all = std::uint64_t{1} << n;
    std::vector<double> m(all);
    for (std::uint64_t mask = 0; mask < all; ++mask) {
      m[mask] = fam.modular(SignVector::from_index(n, mask), phi, o.lambda);
    }
    o.average = std::accumulate(m.begin(), m.end(), 0.0) / static_cast<double>(all);
    o.maximum = *std::max_element(m.begin(), m.end());
    const auto above = std::count_if(m.begin(), m.end(), [&](double v) { return v > o.greedy; });
    o.fraction_above = static_cast<double>(above) / static_cast<double>(all);
    res[k] = std::move(o);
  });

  constexpr double kPigeonholeSlack = 1e-12;
  ExperimentReport r;
  r.name = "derand";
  r.parameters = {{"n_max", I(n_max)}, {"trials", I(trials)}, {"seed", I(static_cast<std::size_t>(seed))},
                  {"phis", S("power:1,power:2,exp2")}, {"lambda", S("rademacher_sum_norm")}};
  r.tolerances = {{"pigeonhole_relative_slack", kPigeonholeSlack}, {"inequality_slack", kInequalitySlack}};
  auto& t = r.add_table("instances", {"index", "n", "phi", "lambda", "signs", "greedy_modular",
                                      "average_modular", "max_modular", "rademacher_modular",
                                      "fraction_above_greedy", "greedy_norm", "pigeonhole"});
  i64 failures = 0;
  i64 top_quartile = 0;
  i64 norm_witness = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& o = res[k];
    const bool pigeonhole = o.greedy >= o.average - kPigeonholeSlack * std::max(1.0, o.average) &&
                            o.average >= o.rademacher - kInequalitySlack;
    if (!pigeonhole) ++failures;
    if (o.fraction_above <= 0.25) ++top_quartile;
    if (o.greedy_norm >= o.lambda - kInequalitySlack) ++norm_witness;
    t.rows.push_back({I(k), I(cases[k].xs.size()), S(phis[cases[k].phi].descriptor()), o.lambda,
                      S(o.signs.to_string()), o.greedy, o.average, o.maximum, o.rademacher,
                      o.fraction_above, o.greedy_norm, pigeonhole});
  }
  r.summary = {{"pigeonhole_failures", failures},
               {"top_quartile_count", top_quartile},
               {"norm_witness_count", norm_witness},
               {"instances", I(cases.size())}};
  r.pass = failures == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Marcinkiewicz envelope

ExperimentReport envelope_lemma_check(const SpaceSpec& E, int trials, std::uint64_t seed,
                                      int indicator_trials) {
  require_positive(trials, "trials");
  if (indicator_trials < 0) indicator_trials = std::max(1, trials / 2);
  const ConcaveWeight phi = envelope_weight(E);
  std::vector<StepFunction> fs;
  std::vector<StepFunction> gs;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) fs.push_back(random_step_function(rng));
  for (int k = 0; k < indicator_trials; ++k) gs.push_back(random_indicator_valued(rng));

  std::vector<double> fe(fs.size()), fm(fs.size()), ge(gs.size()), gm(gs.size());
  parallel_for(fs.size() + gs.size(), [&](std::size_t k) {
    if (k < fs.size()) {
      fe[k] = ri_norm(fs[k], E);
      fm[k] = marcinkiewicz_norm(fs[k], phi);
    } else {
      const std::size_t j = k - fs.size();
      ge[j] = ri_norm(gs[j], E);
      gm[j] = marcinkiewicz_norm(gs[j], phi);
    }
  });

  ExperimentReport r;
  r.name = "envelope";
  r.parameters = {{"space", S(E.name())}, {"trials", I(trials)}, {"indicator_trials", I(indicator_trials)},
                  {"seed", I(static_cast<std::size_t>(seed))}};
  r.tolerances = {{"domination_slack", kEqualityTol}, {"equality_relative", kEqualityTol}};
  const auto& diag = phi.diagnostics();
  auto& dom = r.add_table("domination", {"index", "plateaus", "norm_E", "norm_M", "gap", "ok"});
  i64 dom_fail = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const double gap = fe[k] - fm[k];
    const bool ok = gap >= -kEqualityTol;
    if (!ok) ++dom_fail;
    min_gap = std::min(min_gap, gap);
    dom.rows.push_back({I(k), I(fs[k].size()), fe[k], fm[k], gap, ok});
  }
  auto& eq = r.add_table("indicator_equality", {"index", "measure", "norm_E", "norm_M", "rel_err", "ok"});
  i64 eq_fail = 0;
  double max_rel = 0.0;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const double rel = relative_error(ge[k], gm[k]);
    const bool ok = rel <= kEqualityTol;
    if (!ok) ++eq_fail;
    max_rel = std::max(max_rel, rel);
    eq.rows.push_back({I(k), integral(gs[k]), ge[k], gm[k], rel, ok});
  }
  r.summary = {{"domination_failures", dom_fail},
               {"min_gap", min_gap},
               {"equality_failures", eq_fail},
               {"max_equality_rel_err", max_rel},
               {"envelope_concave", diag.concave},
               {"envelope_at_one", diag.at_one}};
  r.pass = dom_fail == 0 && eq_fail == 0;
  return r;
}

ExperimentReport envelope_suite(int trials, std::uint64_t seed, int indicator_trials) {
  std::vector<ExperimentReport> parts;
  for (const SpaceSpec& E : catalog_spaces()) {
    ExperimentReport part = envelope_lemma_check(E, trials, seed, indicator_trials);
    part.name = E.name();
    parts.push_back(std::move(part));
  }
  ExperimentReport r = merge_reports("envelope", std::move(parts));
  return r;
}

// ---------------------------------------------------------------------------
// G1 embedding chain

ExperimentReport g1_chain_check(int trials, std::uint64_t seed, int grid_size) {
  require_positive(trials, "trials");
  if (grid_size < 2) throw std::invalid_argument("g1chain: grid_size must be >= 2");
  const SpaceSpec G = SpaceSpec::G();
  const SpaceSpec G1 = SpaceSpec::G1();
  const ConcaveWeight psi = ConcaveWeight::log_psi();
  constexpr double kSpotTol = 1e-4;
  constexpr double kDriftMax = 0.10;

  ExperimentReport r;
  r.name = "g1chain";
  r.parameters = {{"trials", I(trials)}, {"seed", I(static_cast<std::size_t>(seed))},
                  {"grid_size", I(grid_size)}, {"t_min", 1e-6}};
  r.tolerances = {{"layer_cake_slack", kEqualityTol}, {"spot_tolerance", kSpotTol},
                  {"drift_max", kDriftMax}};

  // (a) indicator bound
  const std::vector<double> grid = log_grid(1e-6, 1.0, grid_size);
  auto& ta = r.add_table("indicator_bound", {"t", "norm_G", "psi", "ratio"});
  double c = 0.0;
  double spot = 0.0;
  for (double t : grid) {
    const double g = ri_norm(StepFunction::indicator(t), G);
    const double ratio = g / psi(t);
    c = std::max(c, ratio);
    if (t == 1.0) spot = ratio;
    ta.rows.push_back({t, g, psi(t), ratio});
  }
  const double spot_expected = 1.0 / std::sqrt(std::log(2.0));
  const bool pass_a = std::isfinite(c) && std::fabs(spot - spot_expected) <= kSpotTol && c >= spot;

  // (b) layer cake: ||f||_E <= sum of drops times ||I_(0,t_i]||_E
  const std::vector<SpaceSpec> spaces = catalog_spaces();
  std::vector<StepFunction> fs;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) fs.push_back(random_nonincreasing(rng));
  const std::size_t nb = spaces.size() * fs.size();
  std::vector<double> lhs(nb), rhs(nb);
  parallel_for(nb, [&](std::size_t idx) {
    const SpaceSpec& E = spaces[idx / fs.size()];
    const StepFunction& f = fs[idx % fs.size()];
    lhs[idx] = ri_norm(f, E);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double drop = f.value(i) - (i + 1 < f.size() ? f.value(i + 1) : 0.0);
      if (drop != 0.0) s += drop * ri_norm(StepFunction::indicator(f.right(i)), E);
    }
    rhs[idx] = s;
  });
  auto& tb = r.add_table("layer_cake", {"space", "index", "plateaus", "norm", "layer_sum", "ok"});
  i64 b_fail = 0;
  for (std::size_t idx = 0; idx < nb; ++idx) {
    const bool ok = lhs[idx] <= rhs[idx] + kEqualityTol * std::max(1.0, rhs[idx]);
    if (!ok) ++b_fail;
    tb.rows.push_back({S(spaces[idx / fs.size()].name()), I(idx % fs.size()),
                       I(fs[idx % fs.size()].size()), lhs[idx], rhs[idx], ok});
  }

  // (c) ||f||_G <= c' ||f||_{G1}: the first `trials` samples are a prefix
  // of the doubled sample.
  std::vector<StepFunction> hs;
  Rng rng_c(seed ^ 0x9e3779b97f4a7c15ull);
  for (int k = 0; k < 2 * trials; ++k) hs.push_back(random_step_function(rng_c));
  std::vector<double> ng(hs.size()), ng1(hs.size());
  parallel_for(hs.size(), [&](std::size_t k) {
    ng[k] = ri_norm(hs[k], G);
    ng1[k] = ri_norm(hs[k], G1);
  });
  auto& tc = r.add_table("embedding", {"index", "norm_G", "norm_G1", "ratio"});
  double c_half = 0.0;
  double c_full = 0.0;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const double ratio = ng[k] / ng1[k];
    if (k < static_cast<std::size_t>(trials)) c_half = std::max(c_half, ratio);
    c_full = std::max(c_full, ratio);
    tc.rows.push_back({I(k), ng[k], ng1[k], ratio});
  }
  const double drift = std::fabs(c_full - c_half) / c_half;
  const bool pass_c = std::isfinite(c_full) && drift < kDriftMax;

  r.summary = {{"indicator_c", c},
               {"indicator_ratio_at_1", spot},
               {"indicator_ratio_at_1_closed_form", spot_expected},
               {"indicator_bound_pass", pass_a},
               {"layer_cake_failures", b_fail},
               {"embedding_c_trials", c_half},
               {"embedding_c_double_trials", c_full},
               {"embedding_drift", drift},
               {"embedding_pass", pass_c}};
  r.pass = pass_a && b_fail == 0 && pass_c;
  return r;
}

ExperimentReport g_g1_indicator_comparison(int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("gg1: grid_size must be >= 2");
  constexpr double kLow = 0.25;
  constexpr double kHigh = 4.0;
  constexpr double kAsymptote = 0.5;
  constexpr double kAsymptoteTol = 0.05;
  const SpaceSpec G = SpaceSpec::G();
  const ConcaveWeight g1 = ConcaveWeight::log_g1();
  const ConcaveWeight mg = ConcaveWeight::log_g();
  // The weight t / sqrt(log(e/t)), which is convex; only the unchecked sup applies.
  const ConcaveWeight printed = ConcaveWeight::custom(
      "t/sqrt(log(e/t))", [](double t) { return t == 0.0 ? 0.0 : t / std::sqrt(1.0 - std::log(t)); });

  ExperimentReport r;
  r.name = "gg1";
  r.parameters = {{"grid_size", I(grid_size)}, {"t_min", 1e-6}, {"t_max", 1.0}};
  r.tolerances = {{"ratio_low", kLow}, {"ratio_high", kHigh}, {"asymptote", kAsymptote},
                  {"asymptote_tol", kAsymptoteTol}};
  auto& t = r.add_table("indicators", {"t", "G", "G1", "MG", "G/G1", "G/MG", "G1/MG",
                                       "printed_M", "G/printed_M"});
  double lo[3] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[3] = {0.0, 0.0, 0.0};
  double asymptote = 0.0;
  double ratio_at_1 = 0.0;
  for (double s : log_grid(1e-6, 1.0, grid_size)) {
    const StepFunction ind = StepFunction::indicator(s);
    const double vg = ri_norm(ind, G);
    const double vg1 = lorentz_norm(ind, g1);
    const double vmg = marcinkiewicz_norm(ind, mg);
    const double vp = marcinkiewicz_sup_unchecked(ind, printed).value;
    const double ratios[3] = {vg / vg1, vg / vmg, vg1 / vmg};
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], ratios[k]);
      hi[k] = std::max(hi[k], ratios[k]);
    }
    if (s == 1e-6) asymptote = ratios[0];
    if (s == 1.0) ratio_at_1 = ratios[0];
    t.rows.push_back({s, vg, vg1, vmg, ratios[0], ratios[1], ratios[2], vp, vg / vp});
  }
  const double printed_const = marcinkiewicz_sup_unchecked(StepFunction::constant(1.0), printed).value;
  bool in_window = true;
  for (int k = 0; k < 3; ++k) in_window = in_window && lo[k] >= kLow && hi[k] <= kHigh;
  const bool asymptote_ok = std::fabs(asymptote - kAsymptote) <= kAsymptoteTol;
  r.summary = {{"G/G1_min", lo[0]},  {"G/G1_max", hi[0]},  {"G/MG_min", lo[1]},
               {"G/MG_max", hi[1]},  {"G1/MG_min", lo[2]}, {"G1/MG_max", hi[2]},
               {"G/G1_at_1", ratio_at_1}, {"G/G1_at_t_min", asymptote},
               {"printed_weight_norm_of_1", printed_const},
               {"printed_weight_concave", printed.diagnostics().concave}};
  r.pass = in_window && asymptote_ok;
  return r;
}

// ---------------------------------------------------------------------------
// Building-block suites

ExperimentReport rearrangement_suite(int trials, std::uint64_t seed) {
  require_positive(trials, "trials");
  constexpr double kSlack = 1e-12;
  std::vector<StepFunction> fs;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) fs.push_back(random_step_function(rng));
  struct Outcome {
    double measure_gap = 0.0;
    double integral_gap = 0.0;
    bool idempotent = false;
    bool shape = false;
  };
  std::vector<Outcome> res(fs.size());
  parallel_for(fs.size(), [&](std::size_t k) {
    const StepFunction& f = fs[k];
    const StepFunction x = rearrange(f);
    Outcome o;
    o.shape = x.is_nonincreasing() && x.is_nonnegative();
    o.idempotent = rearrange(x) == x;
    o.integral_gap = std::fabs(l1_norm(f) - integral(x));
    std::vector<double> levels{0.0};
    for (double v : f.values()) levels.push_back(std::fabs(v));
    std::sort(levels.begin(), levels.end());
    const std::size_t m = levels.size();
    for (std::size_t i = 0; i + 1 < m; ++i) levels.push_back(0.5 * (levels[i] + levels[i + 1]));
    levels.push_back(levels[m - 1] + 1.0);
    for (double c : levels) {
      o.measure_gap = std::max(o.measure_gap, std::fabs(measure_above(f, c) - measure_above(x, c)));
    }
    res[k] = o;
  });
  ExperimentReport r;
  r.name = "rearrange";
  r.parameters = {{"trials", I(trials)}, {"seed", I(static_cast<std::size_t>(seed))}};
  r.tolerances = {{"summation_slack", kSlack}};
  auto& t = r.add_table("functions", {"index", "plateaus", "measure_gap", "integral_gap",
                                      "idempotent", "nonincreasing", "ok"});
  i64 failures = 0;
  double worst_measure = 0.0;
  double worst_integral = 0.0;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto& o = res[k];
    const bool ok = o.shape && o.idempotent && o.measure_gap <= kSlack && o.integral_gap <= kSlack;
    if (!ok) ++failures;
    worst_measure = std::max(worst_measure, o.measure_gap);
    worst_integral = std::max(worst_integral, o.integral_gap);
    t.rows.push_back({I(k), I(fs[k].size()), o.measure_gap, o.integral_gap, o.idempotent, o.shape, ok});
  }
  r.summary = {{"failures", failures},
               {"max_measure_gap", worst_measure},
               {"max_integral_gap", worst_integral}};
  r.pass = failures == 0;
  return r;
}

ExperimentReport luxemburg_suite(int trials, std::uint64_t seed, int grid_size) {
  require_positive(trials, "trials");
  if (grid_size < 2) throw std::invalid_argument("luxemburg: grid_size must be >= 2");
  constexpr double kTol = 1e-9;
  const OrliczFunction exp2 = OrliczFunction::exp_square();
  ExperimentReport r;
  r.name = "luxemburg";
  r.parameters = {{"trials", I(trials)}, {"seed", I(static_cast<std::size_t>(seed))},
                  {"grid_size", I(grid_size)}, {"t_min", 1e-6}};
  r.tolerances = {{"relative", kTol}};

  auto& ti = r.add_table("exp_square_indicators", {"t", "luxemburg", "closed_form", "rel_err", "ok"});
  i64 failures = 0;
  double worst_ind = 0.0;
  for (double t : log_grid(1e-6, 1.0, grid_size)) {
    const double got = luxemburg_norm(StepFunction::indicator(t), exp2);
    const double want = std::pow(std::log(1.0 + 1.0 / t), -0.5);
    const double rel = relative_error(got, want);
    const bool ok = rel <= kTol;
    if (!ok) ++failures;
    worst_ind = std::max(worst_ind, rel);
    ti.rows.push_back({t, got, want, rel, ok});
  }

  std::vector<StepFunction> fs;
  std::vector<double> ps;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) {
    fs.push_back(random_step_function(rng));
    ps.push_back(rng.uniform(1.0, 6.0));
  }
  std::vector<double> lux(fs.size()), lp(fs.size());
  parallel_for(fs.size(), [&](std::size_t k) {
    lux[k] = luxemburg_norm(fs[k], OrliczFunction::power(ps[k]));
    lp[k] = lp_norm(fs[k], ps[k]);
  });
  auto& tp = r.add_table("power_vs_lp", {"index", "p", "luxemburg", "lp_norm", "rel_err", "ok"});
  double worst_lp = 0.0;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const double rel = relative_error(lux[k], lp[k]);
    const bool ok = rel <= kTol;
    if (!ok) ++failures;
    worst_lp = std::max(worst_lp, rel);
    tp.rows.push_back({I(k), ps[k], lux[k], lp[k], rel, ok});
  }
  r.summary = {{"failures", failures}, {"max_indicator_rel_err", worst_ind}, {"max_lp_rel_err", worst_lp}};
  r.pass = failures == 0;
  return r;
}

ExperimentReport fundamental_suite(int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("fundamental: grid_size must be >= 2");
  constexpr double kTol = 1e-8;
  constexpr int kOraclePoints = 1000000;
  const std::vector<ConcaveWeight> weights{ConcaveWeight::power(0.5),  ConcaveWeight::power(0.25),
                                           ConcaveWeight::power(1.0),  ConcaveWeight::log_g(),
                                           ConcaveWeight::log_g1(),    ConcaveWeight::log_psi()};
  // Points are multiples of 1e-6 so the oracle grid contains them.
  std::vector<double> ts;
  for (double t : log_grid(1e-4, 1.0, grid_size)) {
    const double k = std::round(t * kOraclePoints);
    if (ts.empty() || k / kOraclePoints > ts.back()) ts.push_back(k / kOraclePoints);
  }
  struct Outcome {
    double lorentz = 0.0, phi = 0.0, marc = 0.0, oracle = 0.0;
  };
  const std::size_t total = weights.size() * ts.size();
  std::vector<Outcome> res(total);
  parallel_for(total, [&](std::size_t idx) {
    const ConcaveWeight& w = weights[idx / ts.size()];
    const double t = ts[idx % ts.size()];
    const StepFunction ind = StepFunction::indicator(t);
    Outcome o;
    o.lorentz = lorentz_norm(ind, w);
    o.phi = w(t);
    o.marc = marcinkiewicz_norm(ind, w);
    for (int k = 1; k <= kOraclePoints; ++k) {
      const double s = static_cast<double>(k) / kOraclePoints;
      o.oracle = std::max(o.oracle, std::min(s, t) / w(s));
    }
    res[idx] = o;
  });
  ExperimentReport r;
  r.name = "fundamental";
  r.parameters = {{"grid_size", I(grid_size)}, {"oracle_points", I(kOraclePoints)},
                  {"weights", S("power:0.5,power:0.25,power:1,logG,logG1,logPsi")}};
  r.tolerances = {{"relative", kTol}};
  auto& tab = r.add_table("indicators", {"weight", "t", "lorentz", "phi", "lorentz_exact",
                                         "marcinkiewicz", "oracle", "rel_err_oracle", "product",
                                         "product_rel_err", "ok"});
  i64 failures = 0;
  double worst_oracle = 0.0;
  double worst_product = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto& o = res[idx];
    const double t = ts[idx % ts.size()];
    const bool exact = o.lorentz == o.phi;
    const double rel_oracle = relative_error(o.marc, o.oracle);
    const double product = o.lorentz * o.marc;
    const double rel_product = relative_error(product, t);
    const bool ok = exact && rel_oracle <= kTol && rel_product <= kTol;
    if (!ok) ++failures;
    worst_oracle = std::max(worst_oracle, rel_oracle);
    worst_product = std::max(worst_product, rel_product);
    tab.rows.push_back({S(weights[idx / ts.size()].descriptor()), t, o.lorentz, o.phi, exact, o.marc,
                        o.oracle, rel_oracle, product, rel_product, ok});
  }
  r.summary = {{"failures", failures},
               {"max_oracle_rel_err", worst_oracle},
               {"max_product_rel_err", worst_product}};
  r.pass = failures == 0;
  return r;
}

ExperimentReport hinge_suite(int trials, std::uint64_t seed, int oracle_instances) {
  require_positive(trials, "trials");
  constexpr int kMuPoints = 100000;
  struct Case {
    StepFunction f;
    double t;
  };
  std::vector<Case> cases;
  Rng rng(seed);
  for (int k = 0; k < trials; ++k) {
    StepFunction f = random_step_function(rng);
    cases.push_back({std::move(f), 1.0 - rng.uniform()});
  }
  std::vector<HingeBound> res(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) { res[k] = hinge_family_bound(cases[k].f, cases[k].t); });

  ExperimentReport r;
  r.name = "hinge";
  r.parameters = {{"trials", I(trials)}, {"seed", I(static_cast<std::size_t>(seed))},
                  {"oracle_instances", I(oracle_instances)}, {"mu_points", I(kMuPoints)}};
  r.tolerances = {{"inequality_slack", kInequalitySlack}};

  // inf over mu of t*mu + integral (|f| - mu)^+ on a grid, against the
  // partial integral of f*. The objective is 1-Lipschitz in mu, so the grid
  // minimum exceeds the infimum by at most one grid step.
  auto& to = r.add_table("mu_oracle", {"index", "t", "partial_integral", "grid_inf", "gap", "step", "ok"});
  i64 oracle_fail = 0;
  const std::size_t n_oracle = std::min(cases.size(), static_cast<std::size_t>(std::max(0, oracle_instances)));
  for (std::size_t k = 0; k < n_oracle; ++k) {
    const StepFunction& f = cases[k].f;
    const double t = cases[k].t;
    const double top = linf_norm(f);
    const double step = top / kMuPoints;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kMuPoints; ++i) {
      const double mu = step * i;
      double excess = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        excess += std::max(std::fabs(f.value(j)) - mu, 0.0) * f.length(j);
      }
      best = std::min(best, t * mu + excess);
    }
    const double a = res[k].upper;
    const double gap = best - a;
    const bool ok = gap >= -1e-12 && gap <= step + 1e-12;
    if (!ok) ++oracle_fail;
    to.rows.push_back({I(k), t, a, best, gap, step, ok});
  }

  auto& tab = r.add_table("pairs", {"index", "t", "A", "N", "N/A", "holds"});
  i64 failures = 0;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& h = res[k];
    const double ratio = h.upper > 0.0 ? h.orlicz_value / h.upper : 0.0;
    if (!h.holds) ++failures;
    if (h.upper > 0.0) {
      rmin = std::min(rmin, ratio);
      rmax = std::max(rmax, ratio);
    }
    tab.rows.push_back({I(k), cases[k].t, h.upper, h.orlicz_value, ratio, h.holds});
  }
  r.summary = {{"sandwich_failures", failures}, {"oracle_failures", oracle_fail},
               {"N_over_A_min", rmin}, {"N_over_A_max", rmax}};
  r.pass = failures == 0 && oracle_fail == 0;
  return r;
}

}  // namespace rispace
