#include <cmath>
#include <vector>

#include "doctest.h"
#include "rispace/random.hpp"
#include "rispace/spaces.hpp"

using namespace rispace;

TEST_CASE("ri_norm examples") {
  CHECK(ri_norm(StepFunction::indicator(0.25), SpaceSpec::G()) ==
        doctest::Approx(1.0 / std::sqrt(std::log(5.0))).epsilon(1e-12));
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(ri_norm(StepFunction::constant(-2.5), SpaceSpec::lp(p)) == doctest::Approx(2.5).epsilon(1e-15));
  }
  CHECK(ri_norm(StepFunction::constant(-2.5), SpaceSpec::linf()) == 2.5);
  CHECK(ri_norm(StepFunction::indicator(std::exp(-2.0)), SpaceSpec::G1()) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ri_norm(StepFunction::constant(1.0), SpaceSpec::MG()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fundamental function examples") {
  CHECK(fundamental_function(SpaceSpec::lp(2.0), 0.25) == 0.5);
  CHECK(fundamental_function(SpaceSpec::G(), 0.25) == doctest::Approx(0.788248015893228754).epsilon(1e-12));
  CHECK(fundamental_function_generic(SpaceSpec::G(), 0.25) ==
        doctest::Approx(0.788248015893228754).epsilon(1e-11));
  const auto sqrt_lorentz = SpaceSpec::lorentz(ConcaveWeight::power(0.5));
  CHECK(fundamental_function(sqrt_lorentz, 0.09) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(fundamental_function(SpaceSpec::linf(), 1e-9) == 1.0);
  CHECK_THROWS_AS(fundamental_function(SpaceSpec::G(), 0.0), std::domain_error);
  CHECK_THROWS_AS(fundamental_function(SpaceSpec::G(), 1.5), std::domain_error);
  CHECK_THROWS_AS(fundamental_function_generic(SpaceSpec::G(), -1.0), std::domain_error);
}

TEST_CASE("closed forms agree with the generic path") {
  const std::vector<SpaceSpec> spaces{SpaceSpec::G(),
                                      SpaceSpec::G1(),
                                      SpaceSpec::MG(),
                                      SpaceSpec::L1(),
                                      SpaceSpec::lp(2.0),
                                      SpaceSpec::lp(4.5),
                                      SpaceSpec::linf(),
                                      parse_space("orlicz:power:3"),
                                      parse_space("orlicz:hinge:2"),
                                      parse_space("lorentz:logPsi"),
                                      parse_space("marcinkiewicz:power:0.3")};
  for (const auto& E : spaces) {
    for (int k = 0; k <= 50; ++k) {
      const double t = std::pow(10.0, -6.0 * k / 50.0);
      const auto closed = E.closed_form_fundamental(t);
      REQUIRE(closed.has_value());
      CHECK(*closed == doctest::Approx(fundamental_function_generic(E, t)).epsilon(1e-8));
    }
  }
  const auto custom = SpaceSpec::orlicz(OrliczFunction::custom("cosh-1", [](double s) { return std::cosh(s) - 1.0; }));
  CHECK_FALSE(custom.closed_form_fundamental(0.5).has_value());
  CHECK(fundamental_function(custom, 0.5) == fundamental_function_generic(custom, 0.5));
}

TEST_CASE("fundamental functions are quasiconcave on the catalog") {
  for (const auto& E : catalog_spaces()) {
    double prev_f = 0.0;
    double prev_ratio = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double t = std::pow(10.0, -6.0 + 6.0 * k / 99.0);
      const double f = fundamental_function(E, t);
      const double ratio = t / f;
      CHECK(f >= prev_f * (1.0 - 1e-12));
      CHECK(ratio >= prev_ratio * (1.0 - 1e-12));
      prev_f = f;
      prev_ratio = ratio;
    }
  }
}

TEST_CASE("descriptors") {
  CHECK(parse_space("G").name() == "G");
  CHECK(parse_space("G1").kind() == SpaceSpec::Kind::Lorentz);
  CHECK(parse_space("MG").kind() == SpaceSpec::Kind::Marcinkiewicz);
  CHECK(parse_space("L1").exponent() == 1.0);
  CHECK(parse_space("Lp:2.5").exponent() == 2.5);
  CHECK(parse_space("Linf").kind() == SpaceSpec::Kind::Linf);
  CHECK(parse_space("orlicz:exp2").orlicz_function().kind() == OrliczFunction::Kind::ExpSquareMinusOne);
  CHECK(parse_space("lorentz:power:0.5").weight().kind() == ConcaveWeight::Kind::Power);
  CHECK(parse_weight("logG1").kind() == ConcaveWeight::Kind::LogG1);
  CHECK(parse_weight("envelope:Lp:2").kind() == ConcaveWeight::Kind::Envelope);

  for (const char* bad : {"", "H", "Lp:0.5", "Lp:", "Lp:abc", "orlicz:exp3", "lorentz:power:2",
                          "marcinkiewicz:nope", "lorentz"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_space(bad), DescriptorError);
  }
  try {
    parse_space("H");
    FAIL("expected a descriptor error");
  } catch (const DescriptorError& e) {
    CHECK(std::string(e.what()).find("G1") != std::string::npos);
  }
  CHECK_THROWS_AS(SpaceSpec::G().weight(), std::logic_error);
  CHECK_THROWS_AS(SpaceSpec::G1().orlicz_function(), std::logic_error);
  CHECK_THROWS_AS(SpaceSpec::G().exponent(), std::logic_error);
}

TEST_CASE("envelope weight examples") {
  const auto l2 = envelope_weight(SpaceSpec::lp(2.0));
  const auto lor = envelope_weight(SpaceSpec::lorentz(ConcaveWeight::power(0.3)));
  const auto g = envelope_weight(SpaceSpec::G());
  for (double t : {1e-6, 0.01, 0.25, 0.7, 1.0}) {
    CHECK(l2(t) == doctest::Approx(std::sqrt(t)).epsilon(1e-14));
    CHECK(lor(t) == doctest::Approx(std::pow(t, 0.7)).epsilon(1e-14));
    CHECK(g(t) == doctest::Approx(t * std::sqrt(std::log1p(1.0 / t))).epsilon(1e-12));
  }
  CHECK(g(0.25) == doctest::Approx(0.31715906).epsilon(1e-7));
  CHECK(l2.descriptor() == "envelope:Lp:2");
  for (const auto& E : catalog_spaces()) {
    const auto d = envelope_weight(E).diagnostics();
    CAPTURE(E.name());
    CHECK(d.valid);
    CHECK(d.concave);
  }
}

TEST_CASE("envelope domination and equality") {
  Rng rng(23);
  for (const auto& E : catalog_spaces()) {
    const auto phi = envelope_weight(E);
    for (int k = 0; k < 100; ++k) {
      const StepFunction f = random_step_function(rng);
      CHECK(ri_norm(f, E) >= marcinkiewicz_norm(f, phi) - 1e-8);
      const StepFunction ind = random_indicator_valued(rng);
      CHECK(marcinkiewicz_norm(ind, phi) == doctest::Approx(ri_norm(ind, E)).epsilon(1e-8));
    }
  }
}

TEST_CASE("hinge sandwich") {
  const auto one = hinge_family_bound(StepFunction::constant(1.0), 0.5);
  CHECK(one.upper == 0.5);
  CHECK(one.lower == 0.25);
  CHECK(one.orlicz_value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(one.holds);

  const auto zero = hinge_family_bound(StepFunction(), 0.3);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
  CHECK(zero.orlicz_value == 0.0);
  CHECK(zero.holds);

  CHECK_THROWS_AS(hinge_family_bound(StepFunction::constant(1.0), 0.0), std::domain_error);

  Rng rng(29);
  for (int k = 0; k < 500; ++k) {
    const StepFunction f = random_step_function(rng);
    const double t = rng.uniform(1e-3, 1.0);
    const auto b = hinge_family_bound(f, t);
    CHECK(b.holds);
    CHECK(b.orlicz_value >= b.lower - 1e-9);
    CHECK(b.orlicz_value <= b.upper + 1e-9);
  }
}
