#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracsob/core.hpp"
#include "fracsob/corpus.hpp"
#include "fracsob/params.hpp"
#include "fracsob/quadrature.hpp"

using namespace fracsob;

TEST_CASE("sample evaluates closed forms at the nodes") {
  const Grid g = Grid::covering(DomainSpec::line(-2.0, 2.0), 0.125);

  SUBCASE("constant one is one everywhere") {
    const SampledFunction u = sample(ClosedForm::constant(1.0), g);
    CHECK((u.values() == Complex(1.0)).all());
  }
  SUBCASE("gaussian is one at the origin") {
    const SampledFunction u = sample(ClosedForm::gaussian(), g);
    CHECK(g.coordinate(0, 16) == 0.0);
    CHECK(u[16] == Complex(1.0));
  }
  SUBCASE("sech is finite on the real axis and matches direct evaluation") {
    const SampledFunction u = sample(ClosedForm::sech(), g);
    for (Index k = 0; k < g.size(); ++k) {
      CHECK(std::isfinite(u[k].real()));
      CHECK(u[k].real() == doctest::Approx(1.0 / std::cosh(g.coordinate(0, k))).epsilon(1e-15));
    }
  }
  SUBCASE("source link is kept") {
    const SampledFunction u = sample(ClosedForm::lorentzian(), g);
    REQUIRE(u.source().has_value());
    CHECK(u.source()->identifier() == "lorentzian");
  }
  SUBCASE("a pole on a node is rejected") {
    CHECK_THROWS_AS(sample(ClosedForm::reciprocal(), g), PoleError);
  }
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid::line(0.0, 0.0, 4), Error);
  CHECK_THROWS_AS(Grid::line(0.0, 0.1, 1), Error);
  const Grid plane = Grid::plane({0.0, 0.0}, {0.5, 0.25}, {5, 9});
  CHECK(plane.size() == 45);
  CHECK(plane.cell_volume() == doctest::Approx(0.125));
  const Point x = plane.point(plane.flatten(2, 3));
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 0.75);
}

TEST_CASE("domain specs") {
  CHECK(DomainSpec::box({0.0, 3.0}, {0.0, 4.0}).diameter() == doctest::Approx(5.0));
  CHECK(DomainSpec::line(-8.0, 8.0).diameter() == 16.0);
  CHECK(DomainSpec::parse("-1:2") == DomainSpec::line(-1.0, 2.0));
  CHECK(DomainSpec::parse("0:1,-1:1") == DomainSpec::box({0.0, 1.0}, {-1.0, 1.0}));
  CHECK_THROWS_AS(DomainSpec::parse("1:0"), Error);
  CHECK_THROWS_AS(DomainSpec::parse("nonsense"), Error);
}

TEST_CASE("restriction") {
  const DomainSpec big = DomainSpec::line(-2.0, 2.0);
  const Grid g = Grid::covering(big, 1.0 / 32.0);

  SUBCASE("to the full extent is the identity") {
    const SampledFunction u = sample(ClosedForm::gaussian(), g);
    const SampledFunction r = restrict_to(u, g.extent());
    CHECK(r.grid() == g);
    CHECK((r.values() == u.values()).all());
  }
  SUBCASE("a constant restricted to [0,1] is constant on [0,1]") {
    const SampledFunction r = restrict_to(sample(ClosedForm::constant(1.0), g), DomainSpec::line(0.0, 1.0));
    CHECK(r.grid().extent() == DomainSpec::line(0.0, 1.0));
    CHECK((r.values() == Complex(1.0)).all());
  }
  SUBCASE("does not increase the L^p norm") {
    const SampledFunction u = sample(ClosedForm::sech(), g);
    const DomainSpec small = DomainSpec::line(-0.5, 1.25);
    const SampledFunction r = restrict_to(u, small);
    for (Real p : {1.0, 2.0, 4.0}) CHECK(lp_norm(r, Exponent::finite(p), small) <= lp_norm(u, Exponent::finite(p), big));
    CHECK(lp_norm(r, Exponent::infinity(), small) <= lp_norm(u, Exponent::infinity(), big));
  }
  SUBCASE("commutes with sampling bit-exactly") {
    const DomainSpec small = DomainSpec::line(-0.75, 1.5);
    for (const ClosedForm& f : {ClosedForm::gaussian(), ClosedForm::bump(0.25, 0.5), ClosedForm::sech()}) {
      const SampledFunction a = restrict_to(sample(f, g), small);
      const SampledFunction b = sample(f, restrict_to(sample(f, g), small).grid());
      CHECK(a.grid() == b.grid());
      CHECK((a.values() == b.values()).all());
    }
  }
  SUBCASE("an empty intersection is an error") {
    CHECK_THROWS_AS(restrict_to(sample(ClosedForm::gaussian(), g), DomainSpec::line(3.0, 4.0)), DomainError);
  }
}

TEST_CASE("corpus functions reflect their symmetry") {
  const Grid g = Grid::covering(DomainSpec::line(-4.0, 4.0), 1.0 / 16.0);
  const Index last = g.size() - 1;
  for (const ClosedForm& f : {ClosedForm::gaussian(), ClosedForm::gaussian(4.0), ClosedForm::bump(),
                              ClosedForm::lorentzian(), ClosedForm::sech(), ClosedForm::polynomial_decay(3)}) {
    const SampledFunction u = sample(f, g);
    Real worst = 0.0;
    for (Index k = 0; k <= last; ++k) worst = std::max(worst, std::abs(u[k] - u[last - k]));
    CHECK_MESSAGE(worst <= 1e-15, f.identifier());
  }
}

TEST_CASE("closed form pole bookkeeping") {
  CHECK(ClosedForm::gaussian().pole_ordinates().empty());
  CHECK(ClosedForm::bump().pole_ordinates().empty());
  CHECK(ClosedForm::constant(2.0).pole_ordinates().empty());
  const ClosedForm sech = ClosedForm::sech();
  const auto& poles = sech.pole_ordinates();
  auto listed = [&](Real y) {
    return std::any_of(poles.begin(), poles.end(), [y](Real q) { return std::abs(q - y) <= 1e-15 * std::abs(y); });
  };
  CHECK(listed(std::numbers::pi / 2));
  CHECK(listed(-std::numbers::pi / 2));
  CHECK(listed(3 * std::numbers::pi / 2));
  CHECK(ClosedForm::sech().has_pole_within(2.0));
  CHECK_FALSE(ClosedForm::sech().has_pole_within(1.0));
  // Finite on a line just off a pole ordinate.
  CHECK(std::isfinite(std::abs(ClosedForm::lorentzian()(Complex(0.0, 0.999)))));
}

TEST_CASE("norm parameters") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("2").value() == 2.0);
  CHECK_THROWS_AS(Exponent::finite(0.5), ParameterError);
  CHECK(parse_weight_mode("ultra") == WeightMode::ultra);
  CHECK_THROWS_AS(parse_weight_mode("heavy"), Error);

  NormParams bad{1.5, Exponent::finite(2.0), 1, WeightMode::classical};
  CHECK_THROWS_WITH_AS(bad.require_gagliardo(), doctest::Contains("beta must be in (0,1)"), ParameterError);
  NormParams ok{0.5, Exponent::finite(2.0), 1, WeightMode::classical};
  CHECK_NOTHROW(ok.require_gagliardo());
}

TEST_CASE("corpus manifest") {
  const Corpus& c = Corpus::builtin();
  CHECK(c.version() == "corpus-v1");
  CHECK(c.contains("gaussian"));
  CHECK(c.find("sech").form().identifier() == "sech");
  CHECK_THROWS_WITH_AS(c.find("nosuch"), doctest::Contains("unknown corpus id"), ConfigError);

  SUBCASE("the shipped file is the built-in manifest") {
    const Corpus file = Corpus::load(FRACSOB_SOURCE_DIR "/data/corpus_v1.json");
    CHECK(file.version() == c.version());
    CHECK(file.ids() == c.ids());
  }
  SUBCASE("duplicates and pole mismatches are rejected") {
    const char* dup = R"({"version":"v","members":[{"id":"a","kind":"gaussian","params":[1]},
                                                    {"id":"a","kind":"sech","pole_ordinates":[]}]})";
    CHECK_THROWS_AS(Corpus::parse(dup), ConfigError);
    const char* poles = R"({"version":"v","members":[{"id":"l","kind":"lorentzian","pole_ordinates":[2]}]})";
    CHECK_THROWS_AS(Corpus::parse(poles), ConfigError);
    CHECK_THROWS_AS(Corpus::parse("{"), ConfigError);
  }
}
