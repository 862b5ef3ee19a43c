#include <doctest.h>

#include <cmath>

#include "spikesim/lyapunov.hpp"

using namespace spikesim;

namespace {

const ModelParams kFig1{0.01, 1.0, 100.0, 7.0};

}  // namespace

TEST_CASE("Lyapunov function examples") {
  CHECK(lyapunov_f({0, 0}, 100.0) == 0.0);
  CHECK(lyapunov_f({100, 2}, 100.0) == doctest::Approx(103.0));
  CHECK(lyapunov_f({101, 2}, 100.0) > lyapunov_f({100, 2}, 100.0));
  CHECK(lyapunov_f({100, 3}, 100.0) > lyapunov_f({100, 2}, 100.0));
}

TEST_CASE("closed-form drift examples") {
  CHECK(drift(DriftMode::OneUnit, kFig1, {}, {0, 0}) == doctest::Approx(7.07));
  const ModelParams equal = kFig1.with_gamma(1.0);
  for (std::int64_t kn : {0, 5, 500})
    CHECK(drift(DriftMode::OneUnit, equal, {}, {0, kn}) == doctest::Approx(14.0));
  const State fp = stationary_point(kFig1);
  const double d1 = drift(DriftMode::MeanFieldFrozen, kFig1, fp, {0, 1000});
  const double d2 = drift(DriftMode::MeanFieldFrozen, kFig1, fp, {0, 2000});
  const double d3 = drift(DriftMode::MeanFieldFrozen, kFig1, fp, {0, 3000});
  CHECK(d2 < d1);
  CHECK((d3 - d2) == doctest::Approx(d2 - d1));
}

TEST_CASE("closed form agrees with the generator on a 50x50 grid") {
  const State fp = stationary_point(kFig1);
  const ProcessSpec one = build_oneunit(kFig1);
  const ProcessSpec mf = build_meanfield(kFig1);
  for (std::int64_t kr = 0; kr < 50; ++kr)
    for (std::int64_t kn = 0; kn < 50; ++kn) {
      const LatticeState s{kr * 20, kn};
      CHECK(std::abs(drift(DriftMode::OneUnit, kFig1, {}, s) - generator_drift(one, s)) < 1e-10);
      if (s.kr == 0) continue;
      CHECK(std::abs(drift(DriftMode::MeanFieldFrozen, kFig1, fp, s) - generator_drift(mf, s)) <
            1e-10);
    }
}

TEST_CASE("ergodicity conditions") {
  const ErgodicityCheck mf = ergodicity_condition(DriftMode::MeanFieldFrozen, kFig1);
  CHECK(mf.holds);
  CHECK(mf.margin == doctest::Approx(99.0 + 0.5 * 1.9971469329529244).epsilon(1e-14));
  CHECK(ergodicity_condition(DriftMode::OneUnit, kFig1.with_gamma(2.0)).holds);
  const ErgodicityCheck weak = ergodicity_condition(DriftMode::OneUnit, kFig1.with_gamma(0.5));
  CHECK_FALSE(weak.holds);
  CHECK(weak.margin == doctest::Approx(-0.5));
  const DriftReport r = scan_set_A(DriftMode::OneUnit, kFig1.with_gamma(0.5), std::nullopt);
  CHECK(r.inconclusive);
  CHECK_FALSE(r.pass());
}

TEST_CASE("one-unit scan at the figure parameters") {
  const DriftReport r = scan_set_A(DriftMode::OneUnit, kFig1, std::nullopt, 0.1);
  CHECK(r.pass());
  CHECK(r.violation_count == 0);
  CHECK(r.set_A_size > 0);
  CHECK(r.set_A_extent.kr < r.scan_box.kr_max);
  CHECK(r.set_A_extent.kn < r.scan_box.kn_max);
  CHECK(r.contains({0, 0}));
  const double c = 101.0 * 7.0 + 100.0 * 0.1;
  for (const ARow& row : r.set_A) {
    CHECK(set_A_lhs(DriftMode::OneUnit, kFig1, {}, {row.kr_max, row.kn}) <= c);
    CHECK(set_A_lhs(DriftMode::OneUnit, kFig1, {}, {row.kr_max + 1, row.kn}) > c);
  }
}

TEST_CASE("mean-field scan at the figure parameters") {
  const DriftReport r = scan_set_A(DriftMode::MeanFieldFrozen, kFig1, std::nullopt, 0.1);
  CHECK(r.pass());
  CHECK(r.set_A_size > 0);
  CHECK(r.contains({0, 0}));
}

TEST_CASE("a box smaller than A is rejected") {
  CHECK_THROWS_AS(scan_set_A(DriftMode::OneUnit, kFig1, std::nullopt, 0.1, ScanBox{400, 400}),
                  BoxTooSmall);
}

TEST_CASE("without pumping A is the region lhs <= Gamma * epsilon") {
  const ModelParams q = kFig1.with_p(0.0);
  const DriftReport r = scan_set_A(DriftMode::OneUnit, q, std::nullopt, 0.1);
  CHECK(r.pass());
  for (const ARow& row : r.set_A)
    for (std::int64_t kr = row.kr_min; kr <= row.kr_max; ++kr)
      CHECK(set_A_lhs(DriftMode::OneUnit, q, {}, {kr, row.kn}) <= 10.0);
  CHECK(r.set_A_extent.kn == 0);
}

TEST_CASE("a large epsilon keeps the origin in A") {
  CHECK(drift(DriftMode::OneUnit, kFig1, {}, {0, 0}) < 50.0);
  const DriftReport mf = scan_set_A(DriftMode::MeanFieldFrozen, kFig1, std::nullopt, 50.0);
  CHECK(mf.pass());
  CHECK(mf.contains({0, 0}));
  const DriftReport one = scan_set_A(DriftMode::OneUnit, kFig1.with_alpha(1.0), std::nullopt, 50.0);
  CHECK(one.pass());
  CHECK(one.contains({0, 0}));
}

TEST_CASE("one-unit chain keeps returning to A") {
  const DriftReport r = scan_set_A(DriftMode::OneUnit, kFig1, std::nullopt, 0.1);
  const JumpTrajectory tr = simulate(build_oneunit(kFig1), {0, 0}, {std::nullopt, 1000000}, 3);
  const JumpTrajectory half = simulate(build_oneunit(kFig1), {0, 0}, {std::nullopt, 500000}, 3);
  const std::size_t entries = count_entries(tr, r);
  CHECK(entries >= 100);
  CHECK(entries >= count_entries(half, r));
}
