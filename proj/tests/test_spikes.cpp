#include <doctest.h>

#include <cmath>

#include "spikesim/rng.hpp"
#include "spikesim/spikes.hpp"

using namespace spikesim;

namespace {

Series steps(std::vector<double> t, std::vector<double> v, double t_end) {
  return {std::move(t), std::move(v), t_end, PathKind::PiecewiseConstant};
}

std::vector<double> shifted_exponential(double rate, double a0, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& a : out) a = a0 - std::log1p(-rng.uniform()) / rate;
  return out;
}

}  // namespace

TEST_CASE("spike detection examples") {
  CHECK(detect_spikes(steps({0, 1, 2}, {0, 0, 0}, 3), 10.0).empty());

  const auto two = detect_spikes(steps({0, 1, 2, 3, 4}, {0, 12, 0, 25, 0}, 5), 10.0);
  REQUIRE(two.size() == 2);
  CHECK(two[0].amplitude == 12.0);
  CHECK(two[1].amplitude == 25.0);
  CHECK(two[1].t_peak == 3.0);
  CHECK(two[1].t_start == 3.0);
  CHECK(two[1].t_end == 4.0);

  const auto dip = detect_spikes(steps({0, 1, 2, 3, 4}, {0, 15, 12, 18, 0}, 5), 10.0);
  REQUIRE(dip.size() == 1);
  CHECK(dip[0].amplitude == 18.0);
  CHECK(dip[0].t_start == 1.0);
  CHECK(dip[0].t_peak == 3.0);

  CHECK_THROWS_AS(detect_spikes(steps({0}, {0}, 1), 0.0), std::invalid_argument);
}

TEST_CASE("spikes still open at the end are dropped") {
  CHECK(detect_spikes(steps({0, 1}, {0, 30}, 2), 10.0).empty());
}

TEST_CASE("conditional survival examples") {
  const std::vector<double> one{15.0};
  const SurvivalCurve single = tail_survival(one, 10.0);
  CHECK(single.at(10.0) == 1.0);
  CHECK(single.at(14.9) == 1.0);
  CHECK(single.at(15.0) == 0.0);
  CHECK(single.at(20.0) == 0.0);

  const std::vector<double> four{11, 12, 13, 14};
  CHECK(tail_survival(four, 10.0).at(12.5) == 0.5);
  CHECK_THROWS_AS(tail_survival(std::vector<double>{}, 10.0), InsufficientData);
}

TEST_CASE("exponential fit examples") {
  const std::vector<double> two{11.0, 13.0};
  const TailFit fit = fit_exponential(two, 10.0);
  CHECK(fit.lambda_hat == doctest::Approx(0.5));
  CHECK(fit.n_spikes == 2);

  const auto sample = shifted_exponential(0.2, 10.0, 10000, 99);
  const TailFit big = fit_exponential(sample, 10.0);
  CHECK(big.lambda_hat >= 0.19);
  CHECK(big.lambda_hat <= 0.21);
  CHECK(std::abs(big.lambda_hat - 0.2) <= 0.05 * 0.2);
  REQUIRE(big.r_squared);
  CHECK(*big.r_squared > 0.9);
  CHECK(*big.r_squared <= 1.0);

  const std::vector<double> equal{12.0, 12.0, 12.0};
  const TailFit flat = fit_exponential(equal, 10.0);
  CHECK(flat.lambda_hat == doctest::Approx(0.5));
  CHECK_FALSE(flat.r_squared);
}

TEST_CASE("a geometric survival ladder fits with r squared 1") {
  const std::vector<double> ladder{11, 11, 11, 11, 12, 12, 13, 14};
  const TailFit fit = fit_exponential(ladder, 10.0);
  REQUIRE(fit.r_squared);
  CHECK(*fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plateau examples") {
  CHECK(detect_plateaus(steps({0, 1}, {5, 6}, 2), 1.0).empty());
  const auto ps = detect_plateaus(steps({0, 5, 6}, {0, 12, 0}, 10), 0.0);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].length == 5.0);
  CHECK(ps[1].length == 4.0);
  CHECK(ps[0].threshold == 0.0);
}

TEST_CASE("plateaus of a linear series start and end at crossings") {
  const Series s{{0, 1, 2, 3}, {4, 0, 0, 4}, 3, PathKind::PiecewiseLinear};
  const auto ps = detect_plateaus(s, 2.0);
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].t_start == doctest::Approx(0.5));
  CHECK(ps[0].t_end == doctest::Approx(2.5));
}

TEST_CASE("plateaus lie at or below the threshold") {
  std::vector<double> t, v;
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    t.push_back(i);
    v.push_back(std::floor(rng.uniform() * 20.0));
  }
  const Series s = steps(t, v, 2000);
  for (const PlateauRecord& p : detect_plateaus(s, 10.0)) {
    CHECK(p.length > 0.0);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= p.t_start && t[i] < p.t_end) CHECK(v[i] <= 10.0);
  }
}

TEST_CASE("pairing plateaus with the next spike") {
  const std::vector<PlateauRecord> plateaus{{0, 5, 5, 0}, {7, 10, 3, 0}};
  const std::vector<SpikeRecord> spikes{{6.5, 20, 6, 7}, {12.5, 30, 12, 13}};
  CHECK(pair_plateau_spike(plateaus, std::vector<SpikeRecord>{}).empty());
  const auto pairs = pair_plateau_spike(plateaus, spikes);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].length == 5.0);
  CHECK(pairs[0].amplitude == 20.0);
  CHECK(pairs[1].length == 3.0);
  CHECK(pairs[1].amplitude == 30.0);

  const std::vector<SpikeRecord> late{{12.5, 30, 12, 13}};
  const auto only = pair_plateau_spike(plateaus, late);
  REQUIRE(only.size() == 1);
  CHECK(only[0].length == 3.0);
}

TEST_CASE("correlation examples") {
  const std::vector<PlateauSpikePair> line{{1, 2}, {2, 4}, {3, 6}, {4, 8}};
  const Correlation c = correlation(line);
  CHECK(*c.pearson == doctest::Approx(1.0));
  CHECK(*c.spearman == doctest::Approx(1.0));
  CHECK(c.n == 4);

  const std::vector<PlateauSpikePair> swap{{1, 2}, {2, 1}, {3, 3}};
  CHECK(*correlation(swap).spearman == doctest::Approx(0.5));

  const std::vector<PlateauSpikePair> flat{{1, 2}, {2, 2}, {3, 2}};
  const Correlation f = correlation(flat);
  CHECK_FALSE(f.pearson);
  CHECK_FALSE(f.spearman);

  const std::vector<PlateauSpikePair> few{{1, 2}, {2, 3}};
  CHECK_THROWS_AS(correlation(few), InsufficientData);
}

TEST_CASE("estimators commute with reflection and shifts") {
  const std::vector<PlateauSpikePair> pairs{{1, 5}, {2, 3}, {4, 9}, {7, 8}, {3, 1}};
  std::vector<PlateauSpikePair> flipped;
  for (const auto& p : pairs) flipped.push_back({p.length, -p.amplitude});
  CHECK(*correlation(flipped).spearman == doctest::Approx(-*correlation(pairs).spearman));
  CHECK(*correlation(flipped).pearson == doctest::Approx(-*correlation(pairs).pearson));

  const auto sample = shifted_exponential(0.5, 3.0, 500, 4);
  std::vector<double> moved;
  for (double a : sample) moved.push_back(a + 7.0);
  CHECK(fit_exponential(moved, 10.0).lambda_hat ==
        doctest::Approx(fit_exponential(sample, 3.0).lambda_hat));
}

TEST_CASE("LLN distance on hand-built paths") {
  const ModelParams q(0.0, 1.0, 100.0, 7.0);
  const Trajectory flat = integrate(q, {2.0, 7.0}, {10.0, 0.01, 10});
  JumpTrajectory jump;
  jump.mode = ProcessMode::OneUnit;
  jump.lattice = {100.0, 1.0};
  jump.initial = {200, 7};
  jump.observed_until = 10.0;
  CHECK(lln_sup_distance(jump, flat, 10.0) == doctest::Approx(0.0).epsilon(1e-12));

  jump.events.push_back({4.0, {200, 8}, ChannelLabel::StimEmission});
  CHECK(lln_sup_distance(jump, flat, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lln_sup_distance(jump, flat, 3.0) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(lln_sup_distance(jump, flat, 11.0), CoverageGap);
  jump.observed_until = 5.0;
  CHECK_THROWS_AS(lln_sup_distance(jump, flat, 8.0), CoverageGap);
}

TEST_CASE("photon series from a jump path") {
  JumpTrajectory jump;
  jump.lattice = {10.0, 1.0};
  jump.initial = {0, 3};
  jump.events.push_back({1.0, {0, 2}, ChannelLabel::Leak});
  jump.observed_until = 2.0;
  const Series s = photon_series(jump);
  CHECK(s.t == std::vector<double>{0.0, 1.0});
  CHECK(s.v == std::vector<double>{3.0, 2.0});
  CHECK(s.t_end == 2.0);
  CHECK(s.kind == PathKind::PiecewiseConstant);
}
