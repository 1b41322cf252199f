#include <cmath>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rispace/experiments.hpp"
#include "rispace/random.hpp"

using namespace rispace;

namespace {

std::vector<StepFunction> random_family(Rng& rng, int n) {
  std::vector<StepFunction> xs;
  for (int i = 0; i < n; ++i) xs.push_back(random_step_function(rng));
  return xs;
}

}  // namespace

TEST_CASE("theorem1 report examples") {
  const auto l2 = theorem1_report(SpaceSpec::lp(2.0), 10, 5, 1);
  for (const auto& row : l2.tables[0].rows) CHECK(std::get<double>(row[2]) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& row : l2.tables[1].rows) CHECK(std::get<double>(row[4]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(l2.pass);

  const auto l1 = theorem1_report(SpaceSpec::L1(), 4, 0);
  CHECK(std::get<double>(l1.tables[0].rows[3][2]) == 0.75);
  CHECK(l1.tables[1].rows.empty());

  const auto g = theorem1_report(SpaceSpec::G(), 16, 0);
  CHECK(std::get<double>(g.tables[0].rows[0][1]) == doctest::Approx(1.2011224087864498).epsilon(1e-10));
  CHECK(std::get<double>(g.tables[0].rows[15][2]) == doctest::Approx(1.57325).epsilon(1e-5));
  CHECK(g.summary_number("stabilization_12_16") < 0.05);
  CHECK(g.pass);

  CHECK_THROWS_AS(theorem1_report(SpaceSpec::G(), 61, 0), std::out_of_range);
  CHECK_THROWS_AS(theorem1_report(SpaceSpec::G(), 30, 2), std::out_of_range);
}

TEST_CASE("sign_bruteforce examples") {
  const std::vector<StepFunction> disjoint{StepFunction({0.5, 1.0}, {1.0, 0.0}),
                                           StepFunction({0.5, 1.0}, {0.0, 1.0})};
  const auto d = sign_bruteforce(disjoint, SpaceSpec::lp(2.0));
  CHECK(d.best == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.signs.to_string() == "++");

  const StepFunction x = StepFunction({0.3, 1.0}, {2.0, -1.0});
  const std::vector<StepFunction> single{x};
  const auto s = sign_bruteforce(single, SpaceSpec::G());
  CHECK(s.signs.to_string() == "+");
  CHECK(s.best == ri_norm(x, SpaceSpec::G()));

  const std::vector<StepFunction> opposite{x, x.scaled(-1.0)};
  const auto o = sign_bruteforce(opposite, SpaceSpec::G1());
  CHECK(o.signs.to_string() == "+-");
  CHECK(o.best == doctest::Approx(2.0 * ri_norm(x, SpaceSpec::G1())).epsilon(1e-12));

  CHECK_THROWS_AS(sign_bruteforce(std::vector<StepFunction>(21, x), SpaceSpec::L1()), std::out_of_range);
}

TEST_CASE("sign_bruteforce is flip symmetric and exhaustive") {
  Rng rng(51);
  const std::vector<SpaceSpec> spaces{SpaceSpec::G(), SpaceSpec::MG(), SpaceSpec::lp(3.0)};
  for (int k = 0; k < 20; ++k) {
    const auto xs = random_family(rng, rng.uniform_int(1, 6));
    std::vector<StepFunction> neg;
    for (const auto& f : xs) neg.push_back(f.scaled(-1.0));
    const SpaceSpec& E = spaces[static_cast<std::size_t>(k) % spaces.size()];
    const auto a = sign_bruteforce(xs, E);
    const auto b = sign_bruteforce(neg, E);
    CHECK(a.best == doctest::Approx(b.best).epsilon(1e-12));
    // full enumeration oracle
    double best = 0.0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << xs.size()); ++m) {
      best = std::max(best, ri_norm(signed_sum(xs, SignVector::from_index(xs.size(), m)), E));
    }
    CHECK(a.best == doctest::Approx(best).epsilon(1e-12));
    CHECK(a.signs[0] == 1);
  }
}

TEST_CASE("Orlicz sign inequality examples") {
  const std::vector<StepFunction> disjoint{StepFunction({0.5, 1.0}, {1.0, 0.0}),
                                           StepFunction({0.5, 1.0}, {0.0, 1.0})};
  const auto s = evaluate_sign_inequality(disjoint, OrliczFunction::power(2.0));
  CHECK(s.lhs == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(s.rhs == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-11));
  CHECK(s.pass);
  CHECK(s.max_modular <= 1.0 + 1e-9);
  CHECK(s.rademacher_modular <= s.average_modular + 1e-9);

  const std::vector<StepFunction> constant{StepFunction::constant(1.7)};
  for (const auto& phi : {OrliczFunction::power(1.0), OrliczFunction::power(2.0), OrliczFunction::exp_square()}) {
    const auto c = evaluate_sign_inequality(constant, phi);
    CHECK(c.lhs == doctest::Approx(c.rhs).epsilon(1e-11));
    CHECK(c.pass);
  }

  const auto report = orlicz_sign_inequality(disjoint, OrliczFunction::power(2.0));
  CHECK(report.pass);
  CHECK(report.summary_number("ratio") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  Rng rng(53);
  for (int k = 0; k < 60; ++k) {
    const auto xs = random_family(rng, rng.uniform_int(1, 7));
    for (const auto& phi : {OrliczFunction::power(1.0), OrliczFunction::exp_square()}) {
      const auto r = evaluate_sign_inequality(xs, phi);
      CHECK(r.pass);
      CHECK(r.lhs >= r.rhs - 1e-9);
    }
  }
}

TEST_CASE("derandomized signs") {
  const StepFunction x = StepFunction({0.4, 1.0}, {1.5, -0.5});
  const std::vector<StepFunction> opposite{x, x.scaled(-1.0)};
  for (const auto& phi : {OrliczFunction::power(2.0), OrliczFunction::exp_square()}) {
    const auto eps = derandomized_signs(opposite, phi, 2.0);
    CHECK((eps.to_string() == "+-" || eps.to_string() == "-+"));
  }

  Rng rng(57);
  for (int k = 0; k < 60; ++k) {
    const int n = rng.uniform_int(1, 9);
    const auto xs = random_family(rng, n);
    const OrliczFunction phi = (k % 2 == 0) ? OrliczFunction::power(2.0) : OrliczFunction::exp_square();
    const double lambda = rng.uniform(1.0, 6.0);
    const SignedFamily fam(xs);
    double total = 0.0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      total += fam.modular(SignVector::from_index(static_cast<std::size_t>(n), m), phi, lambda);
    }
    const double avg = total / std::ldexp(1.0, n);
    const auto eps = derandomized_signs(xs, phi, lambda);
    if (std::isinf(avg)) {
      // exp-square overflow on a spike: some completion is infinite
      CHECK(std::isinf(average_modular(xs, phi, lambda)));
      CHECK(std::isinf(fam.modular(eps, phi, lambda)));
      continue;
    }
    CHECK(average_modular(xs, phi, lambda) == doctest::Approx(avg).epsilon(1e-10));
    CHECK(fam.modular(eps, phi, lambda) >= avg * (1.0 - 1e-12));
  }
  CHECK_THROWS_AS(derandomized_signs(opposite, OrliczFunction::power(2.0), 0.0), std::domain_error);
}

TEST_CASE("suites pass at small scale") {
  CHECK(rearrangement_suite(50, 1).pass);
  CHECK(luxemburg_suite(50, 1, 20).pass);
  CHECK(fundamental_suite(5).pass);
  CHECK(sign_suite(5, 30, 1).pass);
  CHECK(derandomization_suite(6, 30, 1).pass);
  CHECK(envelope_suite(30, 1).pass);
  CHECK(hinge_suite(50, 1, 3).pass);
  const auto chain = g1_chain_check(50, 1, 50);
  CHECK(chain.summary_number("indicator_ratio_at_1") == doctest::Approx(1.2011224087864498).epsilon(1e-9));
  CHECK(chain.summary_number("layer_cake_failures") == 0.0);
  const auto gg1 = g_g1_indicator_comparison(50);
  CHECK(gg1.pass);
  CHECK(gg1.summary_number("G/G1_at_1") == doctest::Approx(1.2011224087864498 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::get<bool>(*gg1.find_summary("printed_weight_concave")) == false);
}

TEST_CASE("reports are deterministic and serialize") {
  const auto a = sign_suite(4, 12, 99);
  const auto b = sign_suite(4, 12, 99);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_text() == b.to_text());
  CHECK(sign_suite(4, 12, 98).to_json() != a.to_json());

  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j["experiment"] == "sign");
  CHECK(j["version"] == 1);
  CHECK(j["parameters"]["seed"] == 99);
  CHECK(j["pass"] == true);
  CHECK(j["tables"][0]["rows"].size() == 12);

  CHECK(a.to_csv().rfind("# table: instances\n", 0) == 0);
  CHECK(a.to_text().find("result: PASS") != std::string::npos);

  ExperimentReport failing;
  failing.name = "x";
  failing.pass = false;
  failing.summary = {{"value", std::numeric_limits<double>::infinity()}};
  CHECK(nlohmann::json::parse(failing.to_json())["summary"]["value"] == "inf");
  const auto merged = merge_reports("both", {a, failing});
  CHECK_FALSE(merged.pass);
  CHECK(merged.find_summary("sign.violations") != nullptr);
}
