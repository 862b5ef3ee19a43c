#include <doctest.h>

#include <cmath>

#include "spikesim/model.hpp"

using namespace spikesim;

namespace {

const ModelParams kFig1{0.01, 1.0, 100.0, 7.0};

// Boundary values in the textbook form, kept here as an independent oracle.
std::pair<double, double> textbook_gamma12(const ModelParams& q) {
  const double a = q.alpha(), b = q.beta(), z = q.z();
  const double s = 2.0 / b - a * (1.0 + b) / (z * b);
  const double root = 2.0 * std::sqrt((1.0 / b) * (1.0 / b - a * (1.0 + b) / (z * b)));
  const double c2 = std::pow(a * (1.0 + b) / (z * b), 2);
  return {z * (s - root) / c2, z * (s + root) / c2};
}

}  // namespace

TEST_CASE("parameters are validated") {
  CHECK_THROWS_AS(ModelParams(-0.1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(0.1, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(0.1, 1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(0.1, 1, 1, -1), std::invalid_argument);
  CHECK(kFig1.z() == 7.01);
  CHECK(kFig1.with_p(2.0).z() == 2.01);
}

TEST_CASE("vector field examples") {
  const Derivative d = vector_field(ModelParams(0.01, 1, 2, 7), {1.0, 1.0});
  CHECK(d.r == doctest::Approx(3.495).epsilon(1e-14));
  CHECK(d.n == doctest::Approx(-0.99).epsilon(1e-14));
  const Derivative origin = vector_field(kFig1, {0.0, 0.0});
  CHECK(origin.r == doctest::Approx(0.07));
  CHECK(origin.n == 0.0);
}

TEST_CASE("stationary point examples") {
  const State s = stationary_point(kFig1);
  CHECK(std::abs(s.r - 14.0 / 7.01) < 1e-12);
  CHECK(std::abs(s.r - 1.9971469329529244) < 1e-14);
  CHECK(s.n == 7.0);
  const State a0 = stationary_point(ModelParams(0.0, 1.0, 42.0, 7.0));
  CHECK(a0.r == doctest::Approx(2.0));
  CHECK(a0.n == doctest::Approx(7.0));
  const State empty = stationary_point(ModelParams(0.5, 1.0, 1.0, 0.0));
  CHECK(empty.r == 0.0);
  CHECK(empty.n == 0.0);
  CHECK_THROWS_AS(stationary_point(ModelParams(0.0, 1.0, 1.0, 0.0)), UndefinedStationaryPoint);
}

TEST_CASE("stationary point annihilates the field on the parameter grid") {
  for (double a : {0.0, 0.01, 0.5, 7.0})
    for (double b : {0.5, 1.0, 2.0})
      for (double g : {1.0, 2.0, 100.0})
        for (double p : {1.0, 7.0}) {
          const ModelParams q(a, b, g, p);
          const Derivative d = vector_field(q, stationary_point(q));
          CHECK(std::abs(d.r) < 1e-12);
          CHECK(std::abs(d.n) < 1e-12);
        }
}

TEST_CASE("discriminant and eigenvalues at frozen values") {
  CHECK(discriminant(ModelParams(0.0, 1.0, 1.0, 7.0)) == doctest::Approx(5.25).epsilon(1e-14));
  CHECK(discriminant(kFig1) == doctest::Approx(-0.06876946250210622).epsilon(1e-12));
  CHECK(discriminant(kFig1.with_gamma(1.0)) == doctest::Approx(5.285027034997894).epsilon(1e-12));
  CHECK(discriminant(kFig1.with_gamma(2.0)) ==
        doctest::Approx(-0.4287417150021062).epsilon(1e-12));

  const auto [l1, l2] = eigenvalues(kFig1);
  CHECK(l1.real() == doctest::Approx(-0.03647653352353780).epsilon(1e-12));
  CHECK(l1.imag() == doctest::Approx(0.2622393229515860).epsilon(1e-12));
  CHECK(l2 == std::conj(l1));

  const auto [d1, d2] = eigenvalues(ModelParams(0.0, 1.0, 1.75, 7.0));
  CHECK(d1.real() == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(d2.real() == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(std::abs(d1.imag()) < 1e-6);
}

TEST_CASE("Vieta relations and stability on the parameter grid") {
  for (double a : {0.0, 0.01, 0.5, 7.0, 8.0})
    for (double b : {0.5, 1.0, 2.0})
      for (double g : {0.1, 1.0, 2.0, 100.0})
        for (double p : {1.0, 7.0}) {
          const ModelParams q(a, b, g, p);
          const double z = q.z();
          const auto [l1, l2] = eigenvalues(q);
          const double sum = -(z / g + a * (1.0 + b) / (z * b));
          const double prod = z / (g * b);
          CHECK(std::abs((l1 + l2).real() - sum) < 1e-10 * std::max(1.0, std::abs(sum)));
          CHECK(std::abs((l1 * l2).real() - prod) < 1e-10 * std::max(1.0, prod));
          CHECK(l1.real() < 0.0);
          CHECK(l2.real() < 0.0);
          CHECK((classify_regime(q) == Regime::StableNode) == (discriminant(q) >= 0.0));
        }
}

TEST_CASE("regime classification examples") {
  CHECK(classify_regime(kFig1.with_gamma(1.0)) == Regime::StableNode);
  CHECK(classify_regime(kFig1.with_gamma(2.0)) == Regime::StableFocus);
  CHECK(classify_regime(kFig1) == Regime::StableFocus);
  for (double g : {0.1, 1.0, 10.0, 100.0})
    CHECK(classify_regime(ModelParams(8.0, 1.0, g, 7.0)) == Regime::StableNode);
  CHECK(to_string(Regime::StableFocus) == "StableFocus");
}

TEST_CASE("gamma boundaries at frozen values") {
  const GammaBoundaries b = gamma_boundaries(kFig1);
  REQUIRE(b.gamma1);
  REQUIRE(b.gamma2);
  REQUIRE(b.gamma_star);
  REQUIRE(b.delta_at_star);
  CHECK_FALSE(b.gamma0);
  CHECK(*b.gamma1 == doctest::Approx(1.755004466839471).epsilon(1e-12));
  CHECK(*b.gamma2 == doctest::Approx(3439805.244995533).epsilon(1e-10));
  CHECK(*b.gamma_star == doctest::Approx(3.510007142857143).epsilon(1e-12));
  CHECK(*b.delta_at_star == doctest::Approx(-0.9971469329529244).epsilon(1e-12));
  CHECK(*b.gamma1 <= *b.gamma_star);
  CHECK(*b.gamma_star <= *b.gamma2);

  const auto [t1, t2] = textbook_gamma12(kFig1);
  CHECK(*b.gamma1 == doctest::Approx(t1).epsilon(1e-9));
  CHECK(*b.gamma2 == doctest::Approx(t2).epsilon(1e-9));

  const GammaBoundaries zero = gamma_boundaries(ModelParams(0.0, 1.0, 1.0, 7.0));
  REQUIRE(zero.gamma0);
  CHECK(*zero.gamma0 == doctest::Approx(1.75));
  CHECK_FALSE(zero.gamma1);
  CHECK_FALSE(zero.gamma2);

  const GammaBoundaries strong = gamma_boundaries(ModelParams(7.0, 1.0, 1.0, 7.0));
  CHECK_FALSE(strong.gamma1);
  CHECK_FALSE(strong.gamma2);
}

TEST_CASE("discriminant at the minimum matches the computed depth for beta != 1") {
  const ModelParams q(0.01, 2.0, 1.0, 7.0);
  const GammaBoundaries b = gamma_boundaries(q);
  REQUIRE(b.gamma_star);
  CHECK(*b.delta_at_star == doctest::Approx(-0.2494646680942184).epsilon(1e-12));
  CHECK(discriminant(q.with_gamma(*b.gamma_star)) ==
        doctest::Approx(*b.delta_at_star).epsilon(1e-12));
}

TEST_CASE("discriminant vanishes at both boundaries") {
  for (double a : {0.01, 0.5, 3.0})
    for (double beta : {0.5, 1.0, 2.0}) {
      const ModelParams q(a, beta, 1.0, 7.0);
      const GammaBoundaries b = gamma_boundaries(q);
      REQUIRE(b.gamma1);
      REQUIRE(b.gamma2);
      CHECK(std::abs(discriminant(q.with_gamma(*b.gamma1))) < 1e-9);
      CHECK(std::abs(discriminant(q.with_gamma(*b.gamma2))) < 1e-9);
      CHECK(classify_regime(q.with_gamma(0.5 * (*b.gamma1 + *b.gamma_star))) ==
            Regime::StableFocus);
      CHECK(classify_regime(q.with_gamma(0.5 * *b.gamma1)) == Regime::StableNode);
      CHECK(classify_regime(q.with_gamma(2.0 * *b.gamma2)) == Regime::StableNode);
    }
}

TEST_CASE("discriminant is unimodal in gamma with the stated limit") {
  const GammaBoundaries b = gamma_boundaries(kFig1);
  const double gs = *b.gamma_star;
  double prev = discriminant(kFig1.with_gamma(gs * 1e-3));
  for (int i = 1; i <= 200; ++i) {
    const double g = gs * (1e-3 + (1.0 - 1e-3) * i / 200.0);
    const double d = discriminant(kFig1.with_gamma(g));
    CHECK(d < prev);
    prev = d;
  }
  for (int i = 1; i <= 200; ++i) {
    const double g = gs * std::pow(10.0, 8.0 * i / 200.0);
    const double d = discriminant(kFig1.with_gamma(g));
    CHECK(d > prev);
    prev = d;
  }
  const double limit = std::pow(0.01 * 2.0 / (2.0 * 7.01), 2);
  CHECK(discriminant(kFig1.with_gamma(1e15)) == doctest::Approx(limit).epsilon(1e-6));
}

TEST_CASE("small alpha limit") {
  const GammaBoundaries b = gamma_boundaries(ModelParams(1e-6, 1.0, 1.0, 7.0));
  CHECK(std::abs(*b.gamma1 - 1.75) < 1e-3);
  CHECK(*b.gamma1 == doctest::Approx(1.7500005000000446).epsilon(1e-12));
  CHECK(*b.gamma2 > 1e6);
}

TEST_CASE("stability report bundles the pieces") {
  const StabilityReport r = analyze_stability(kFig1);
  CHECK(r.regime == Regime::StableFocus);
  CHECK(r.discriminant == discriminant(kFig1));
  CHECK(r.fixed_point == stationary_point(kFig1));
}
