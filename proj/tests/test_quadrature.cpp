#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fracsob/corpus.hpp"
#include "fracsob/quadrature.hpp"
#include "oracles.hpp"

using namespace fracsob;

namespace {

const DomainSpec kLine = DomainSpec::line(-8.0, 8.0);
const DomainSpec kUnit = DomainSpec::line(0.0, 1.0);
constexpr Real kH = 1.0 / 64.0;

NormParams params(Real beta, Real p, WeightMode w = WeightMode::classical, int n = 1) {
  return {beta, Exponent::finite(p), n, w};
}

SampledFunction on(const ClosedForm& f, const DomainSpec& d, Real h) { return sample(f, Grid::covering(d, h)); }

std::vector<Real> real_samples(const SampledFunction& u) {
  std::vector<Real> out;
  for (Index k = 0; k < u.grid().size(); ++k) out.push_back(u[k].real());
  return out;
}

}  // namespace

TEST_CASE("lp_norm") {
  CHECK(lp_norm(on(ClosedForm::constant(1.0), kUnit, kH), Exponent::finite(2.0), kUnit) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm(on(ClosedForm::constant(0.0), kLine, kH), Exponent::finite(2.0), kLine) == 0.0);
  const Real expected = std::pow(std::numbers::pi / 2.0, 0.25);
  CHECK(std::abs(lp_norm(on(ClosedForm::gaussian(), kLine, kH), Exponent::finite(2.0), kLine) - expected) < 1e-6);
  CHECK(lp_norm(on(ClosedForm::gaussian(), kLine, kH), Exponent::infinity(), kLine) == 1.0);
  SUBCASE("2D gaussian") {
    const DomainSpec box = DomainSpec::box({-4.0, 4.0}, {-4.0, 4.0});
    const Real l2 = lp_norm(on(ClosedForm::gaussian(), box, 1.0 / 16.0), Exponent::finite(2.0), box);
    CHECK(l2 == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-10));
  }
}

TEST_CASE("gagliardo_seminorm of constants vanishes") {
  for (Real c : {0.0, 1.0, -3.5}) {
    for (Real beta : {0.1, 0.5, 0.9}) {
      for (Real p : {1.0, 2.0, 3.0}) {
        const NormReport r = gagliardo_seminorm(on(ClosedForm::constant(c), kUnit, kH), params(beta, p), kUnit);
        CHECK(r.value == 0.0);
        CHECK(r.is_finite());
      }
    }
  }
}

TEST_CASE("gagliardo_seminorm agrees with a dense double-sum oracle") {
  QuadratureConfig cfg;
  cfg.estimate_error = false;
  const NormReport r = gagliardo_seminorm(on(ClosedForm::gaussian(), kLine, kH), params(0.5, 2.0), kLine, cfg);
  const Real oracle_power =
      oracle::dense_gagliardo_power([](double x) { return std::exp(-x * x); }, -8.0, 8.0, kH / 2.0, 0.5, 2.0);
  const Real oracle_value = std::sqrt(oracle_power);
  CHECK(std::abs(r.value - oracle_value) / oracle_value < 1e-3);
}

TEST_CASE("Gagliardo-Fourier bridge for p = 2") {
  QuadratureConfig cfg;
  cfg.exterior_tail = true;
  cfg.estimate_error = false;
  const SampledFunction u = on(ClosedForm::gaussian(), kLine, kH);
  for (Real beta : {0.3, 0.5, 0.7}) {
    const Real squared = std::pow(gagliardo_seminorm(u, params(beta, 2.0), kLine, cfg).value, 2.0);
    const Real expected = oracle::gaussian_bridge(beta);
    CHECK_MESSAGE(std::abs(squared - expected) / expected < 0.02, "beta = " << beta);
  }
  SUBCASE("the oracle constant at beta = 1/2 is 2 pi") {
    CHECK(oracle::bridge_constant(0.5) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
  }
}

TEST_CASE("exterior tail is limited to 1D classical sums") {
  QuadratureConfig cfg;
  cfg.exterior_tail = true;
  const SampledFunction u = on(ClosedForm::gaussian(), kLine, 0.125);
  CHECK_THROWS_AS(gagliardo_seminorm(u, params(0.5, 2.0, WeightMode::ultra), kLine, cfg), ParameterError);
  const DomainSpec box = DomainSpec::box({-2.0, 2.0}, {-2.0, 2.0});
  CHECK_THROWS_AS(gagliardo_seminorm(on(ClosedForm::gaussian(), box, 0.25), params(0.5, 2.0, WeightMode::classical, 2), box, cfg),
                  ParameterError);
}

TEST_CASE("scaling law of the classical seminorm") {
  QuadratureConfig cfg;
  cfg.exterior_tail = true;
  cfg.estimate_error = false;
  for (Real beta : {0.3, 0.7}) {
    const Real base = gagliardo_seminorm(on(ClosedForm::gaussian(), kLine, kH), params(beta, 2.0), kLine, cfg).value;
    for (Real lambda : {0.5, 2.0}) {
      const ClosedForm scaled = ClosedForm::gaussian(lambda * lambda);
      const Real value = gagliardo_seminorm(on(scaled, kLine, kH), params(beta, 2.0), kLine, cfg).value;
      const Real predicted = std::pow(lambda, beta - 0.5) * base;
      CHECK_MESSAGE(std::abs(value - predicted) / predicted < 0.03, "beta = " << beta << ", lambda = " << lambda);
    }
  }
}

TEST_CASE("parameter validation") {
  const SampledFunction u = on(ClosedForm::gaussian(), kUnit, kH);
  CHECK_THROWS_WITH_AS(gagliardo_seminorm(u, params(1.5, 2.0), kUnit), doctest::Contains("beta must be in (0,1)"),
                       ParameterError);
  CHECK_THROWS_AS(gagliardo_seminorm(u, params(0.0, 2.0), kUnit), ParameterError);
  CHECK_THROWS_AS(gagliardo_seminorm(u, {0.5, Exponent::infinity(), 1, WeightMode::classical}, kUnit), ParameterError);
}

TEST_CASE("reflection symmetry and weight monotonicity") {
  const DomainSpec d = DomainSpec::line(-4.0, 4.0);
  const Real h = 1.0 / 32.0;
  for (WeightMode w : {WeightMode::classical, WeightMode::ultra}) {
    const Real right = gagliardo_seminorm(on(ClosedForm::bump(0.25, 0.5), d, h), params(0.5, 2.0, w), d).value;
    const Real left = gagliardo_seminorm(on(ClosedForm::bump(-0.25, 0.5), d, h), params(0.5, 2.0, w), d).value;
    CHECK(std::abs(right - left) <= 1e-12 * right);
  }
  for (const NamedForm& m : Corpus::builtin().forms(Corpus::builtin().ids())) {
    const SampledFunction u = on(m.form, d, h);
    for (Real p : {1.5, 2.0}) {
      const Real classical = gagliardo_seminorm(u, params(0.4, p, WeightMode::classical), d).value;
      const Real ultra = gagliardo_seminorm(u, params(0.4, p, WeightMode::ultra), d).value;
      CHECK_MESSAGE(ultra >= classical, m.id);
    }
  }
}

TEST_CASE("embedding constant on a unit-diameter domain") {
  for (const NamedForm& m : Corpus::builtin().forms(Corpus::builtin().ids())) {
    const SampledFunction u = on(m.form, kUnit, kH);
    for (auto [lo, hi] : {std::pair{0.25, 0.5}, std::pair{0.5, 0.75}}) {
      for (Real p : {1.5, 2.0, 4.0}) {
        for (WeightMode w : {WeightMode::classical, WeightMode::ultra}) {
          const Real lower = gagliardo_seminorm(u, params(lo, p, w), kUnit).value;
          const Real upper = gagliardo_seminorm(u, params(hi, p, w), kUnit).value;
          CHECK_MESSAGE(lower <= std::pow(2.0, 1.0 / p) * upper + 1e-9, m.id << " p=" << p);
        }
      }
    }
  }
}

TEST_CASE("determinism across tiles and workers") {
  const SampledFunction u = on(ClosedForm::sech(), DomainSpec::line(-4.0, 4.0), 1.0 / 32.0);
  const DomainSpec d = u.grid().extent();
  QuadratureConfig base;
  const NormReport reference = gagliardo_seminorm(u, params(0.6, 2.5, WeightMode::ultra), d, base);
  for (Index tile : {7, 64, 300}) {
    for (unsigned workers : {1u, 3u, 8u}) {
      QuadratureConfig cfg;
      cfg.tile_size = tile;
      cfg.workers = workers;
      const NormReport r = gagliardo_seminorm(u, params(0.6, 2.5, WeightMode::ultra), d, cfg);
      CHECK(r.value == reference.value);
      CHECK(r.error_estimate == reference.error_estimate);
    }
  }
}

TEST_CASE("puncture sensitivity stays below the error estimate") {
  const DomainSpec d = DomainSpec::line(-4.0, 4.0);
  for (const NamedForm& m : Corpus::builtin().forms(Corpus::builtin().ids())) {
    const NormReport coarse = gagliardo_seminorm(on(m.form, d, 1.0 / 32.0), params(0.5, 2.0), d);
    const NormReport fine = gagliardo_seminorm(on(m.form, d, 1.0 / 64.0), params(0.5, 2.0), d);
    CHECK(fine.puncture == coarse.puncture / 2.0);
    CHECK_MESSAGE(std::abs(fine.value - coarse.value) <= coarse.error_estimate, m.id);
  }
}

TEST_CASE("holder_seminorm") {
  CHECK(holder_seminorm(on(ClosedForm::linear_ramp(), kUnit, kH), 0.5, kUnit, false).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(holder_seminorm(on(ClosedForm::constant(2.0), kUnit, kH), 0.5, kUnit, false).value == 0.0);

  const DomainSpec d = DomainSpec::line(-4.0, 4.0);
  const Real h = 1.0 / 16.0;
  const SampledFunction u = on(ClosedForm::gaussian(), d, h);
  const NormReport r = holder_seminorm(u, 0.3, d, false);
  CHECK(r.value == doctest::Approx(oracle::brute_holder(real_samples(u), h, 0.3)).epsilon(1e-14));
  REQUIRE(r.witness.has_value());
  const auto [i, j] = *r.witness;
  CHECK(std::abs(u[i] - u[j]) / std::pow(std::abs(u.grid().coordinate(0, i) - u.grid().coordinate(0, j)), 0.3) ==
        doctest::Approx(r.value).epsilon(1e-14));
}

TEST_CASE("full_norm") {
  const NormReport zero = full_norm(on(ClosedForm::constant(0.0), kUnit, kH), params(0.5, 2.0), kUnit);
  CHECK(zero.value == 0.0);
  REQUIRE(zero.p_power_value.has_value());
  CHECK(*zero.p_power_value == 0.0);
  for (Real beta : {0.2, 0.5, 0.8}) {
    const NormReport one = full_norm(on(ClosedForm::constant(1.0), kUnit, kH), params(beta, 2.0), kUnit);
    CHECK(one.value == doctest::Approx(1.0).epsilon(1e-14));
  }
  const SampledFunction g = on(ClosedForm::gaussian(), kLine, kH);
  const NormReport r = full_norm(g, params(0.5, 2.0, WeightMode::ultra), kLine);
  REQUIRE(r.lp_part.has_value());
  REQUIRE(r.seminorm_part.has_value());
  CHECK(r.value == doctest::Approx(*r.lp_part + *r.seminorm_part));
  CHECK(*r.p_power_value == doctest::Approx(std::hypot(*r.lp_part, *r.seminorm_part)));
  SUBCASE("p = inf uses the Hoelder seminorm") {
    const NormReport inf = full_norm(g, {0.5, Exponent::infinity(), 1, WeightMode::classical}, kLine);
    CHECK(*inf.lp_part == 1.0);
    CHECK(*inf.seminorm_part == doctest::Approx(holder_seminorm(g, 0.5, kLine, false).value));
  }
}

TEST_CASE("sobolev_integer_norm") {
  const Real root = std::sqrt(std::numbers::pi / 2.0);
  const Real expected = std::sqrt(root + root);
  CHECK(std::abs(sobolev_integer_norm(on(ClosedForm::gaussian(), kLine, kH), 1, Exponent::finite(2.0), kLine) - expected) <
        1e-4);
  const SampledFunction c = on(ClosedForm::constant(2.0), kUnit, kH);
  CHECK(sobolev_integer_norm(c, 1, Exponent::finite(2.0), kUnit) ==
        doctest::Approx(lp_norm(c, Exponent::finite(2.0), kUnit)).epsilon(1e-12));
}

TEST_CASE("truncation sweep verdicts") {
  const std::vector<Real> radii{2.0, 4.0, 8.0};
  const auto gauss = gagliardo_truncation_sweep(ClosedForm::gaussian(), params(0.5, 2.0), radii, 1.0 / 16.0);
  CHECK(gauss.report.verdict == Verdict::finite);
  const auto ramp = gagliardo_truncation_sweep(ClosedForm::linear_ramp(), params(0.5, 2.0), radii, 1.0 / 16.0);
  CHECK(ramp.report.verdict == Verdict::divergent);
}

TEST_CASE("2D smoke test") {
  const DomainSpec box = DomainSpec::box({-4.0, 4.0}, {-4.0, 4.0});
  QuadratureConfig cfg;
  cfg.estimate_error = false;
  const SampledFunction u = on(ClosedForm::gaussian(), box, 1.0 / 16.0);
  const NormReport r = gagliardo_seminorm(u, params(0.5, 2.0, WeightMode::classical, 2), box, cfg);
  CHECK(r.is_finite());
  CHECK(r.value > 0.0);
  CHECK(r.nodes == u.grid().size());
}
