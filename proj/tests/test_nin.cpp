// Copyright 2026 The Negotiation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "negotiation/nin.hpp"
#include "oracles.hpp"

namespace negotiation {
namespace {

const TriangularDomain kDomain(10.0);
const UtilitySpec kTrue1(1, 0, 4, 10);
const UtilitySpec kTrue2(0, 1, 7.0 / 3.0, 10);
const Point kStart{5, 4};
const SecretDistribution kDefault{};
const SecretDistribution kExact{0.0};

ParetoSegment frontier() { return pareto_frontier(kTrue1, kTrue2); }

TEST(SampleDirection, ZeroSpreadIsTheGradient) {
  Rng rng = stream_rng(1, 0);
  EXPECT_EQ(sample_direction(kTrue1, kStart, kExact, rng), kTrue1.gradient(kStart));
}

TEST(SampleDirection, MeanIsTheGradient) {
  Rng rng = stream_rng(2, 0);
  const Vec2 g = kTrue2.gradient(kStart);
  const double sd = kDefault.spread_ratio * norm(g);
  constexpr int kDraws = 100000;
  Vec2 sum{0.0, 0.0};
  for (int i = 0; i < kDraws; ++i) sum += sample_direction(kTrue2, kStart, kDefault, rng);
  const Vec2 mean = sum / kDraws;
  const double se = sd / std::sqrt(kDraws);
  EXPECT_LT(std::abs(mean[0] - g[0]), 3 * se);
  EXPECT_LT(std::abs(mean[1] - g[1]), 3 * se);
}

TEST(SampleDirection, SeedsGiveDifferentDraws) {
  Rng a = stream_rng(3, 0), b = stream_rng(4, 0), c = stream_rng(3, 1);
  const Vec2 va = sample_direction(kTrue1, kStart, kDefault, a);
  EXPECT_NE(va, sample_direction(kTrue1, kStart, kDefault, b));
  EXPECT_NE(va, sample_direction(kTrue1, kStart, kDefault, c));
}

TEST(NinMap, FrontierAbsorbsEveryDirection) {
  Rng rng = stream_rng(5, 0);
  const SecretDistribution wide{2.0};
  for (int i = 0; i <= 20; ++i) {
    const Point x = frontier_point(frontier(), 0.02 + 0.96 * i / 20.0);
    for (int r = 0; r < 200; ++r) {
      const NinRound round = nin_map(kTrue1, kTrue2, x, wide, wide, kDomain, {}, rng);
      ASSERT_FALSE(round.moved);
      ASSERT_EQ(round.point, x);
    }
  }
}

TEST(NinMap, ZeroSpreadMatchesIdmStep) {
  std::mt19937_64 gen(6);
  Rng rng = stream_rng(6, 0);
  for (int i = 0; i < 100; ++i) {
    const Point x = testing::random_interior(gen, 10.0, 0.05);
    const NinRound round = nin_map(kTrue1, kTrue2, x, kExact, kExact, kDomain, {}, rng);
    const IdmStep step = idm_step(kTrue1, kTrue2, x, kDomain);
    EXPECT_EQ(round.direction, step.direction);
    if (step.lengths.lambda_star > NinConfig{}.movement_threshold) EXPECT_EQ(round.point, step.point);
  }
}

TEST(NinMap, NeverDecreasesTrueUtilities) {
  std::mt19937_64 gen(7);
  Rng rng = stream_rng(7, 0);
  for (int i = 0; i < 10000; ++i) {
    const Point x = testing::random_interior(gen, 10.0, 0.01);
    const NinRound round = nin_map(kTrue1, kTrue2, x, kDefault, kDefault, kDomain, {}, rng);
    ASSERT_GE(kTrue1.value(round.point), kTrue1.value(x) - 1e-12);
    ASSERT_GE(kTrue2.value(round.point), kTrue2.value(x) - 1e-12);
    ASSERT_TRUE(contains_strictly(kDomain, round.point));
  }
}

TEST(NinRun, StartOnFrontierStopsAfterMRounds) {
  for (const int M : {1, 5, 12}) {
    NinConfig cfg;
    cfg.M = M;
    Rng rng = stream_rng(8, static_cast<std::uint64_t>(M));
    const Point x = frontier_point(frontier(), 0.37);
    std::vector<Point> path;
    const TrialStats s = nin_run(kTrue1, kTrue2, x, kDefault, kDefault, kDomain, cfg, rng, &path);
    EXPECT_EQ(s.settlement, x);
    EXPECT_EQ(s.total_rounds, M);
    EXPECT_EQ(s.accepted_steps, 0);
    EXPECT_EQ(s.relative_error, 0.0);
    EXPECT_EQ(path.size(), 1u);
  }
}

TEST(NinRun, AcceptedStepsImproveBothParties) {
  NinConfig cfg;
  Rng rng = stream_rng(9, 0);
  std::vector<Point> path;
  const TrialStats s = nin_run(kTrue1, kTrue2, kStart, kDefault, kDefault, kDomain, cfg, rng, &path);
  ASSERT_EQ(path.size(), static_cast<std::size_t>(s.accepted_steps) + 1);
  for (std::size_t t = 1; t < path.size(); ++t) {
    EXPECT_GE(kTrue1.value(path[t]), kTrue1.value(path[t - 1]) - 1e-12);
    EXPECT_GE(kTrue2.value(path[t]), kTrue2.value(path[t - 1]) - 1e-12);
  }
  EXPECT_EQ(path.back(), s.settlement);
  EXPECT_NEAR(s.relative_error,
              distance_to_frontier(frontier(), s.settlement) /
                  distance_to_frontier(frontier(), kStart),
              1e-15);
  EXPECT_LT(s.relative_error, 1.0);
  EXPECT_FALSE(s.exhausted);
}

TEST(NinRun, RoundBudgetExhaustionIsFlagged) {
  NinConfig cfg;
  cfg.max_total_rounds = 3;
  Rng rng = stream_rng(10, 0);
  const TrialStats s = nin_run(kTrue1, kTrue2, kStart, kDefault, kDefault, kDomain, cfg, rng);
  EXPECT_TRUE(s.exhausted);
  EXPECT_EQ(s.total_rounds, 3);
}

TEST(NinRun, ZeroSpreadFollowsIdm) {
  NinConfig cfg;
  Rng rng = stream_rng(11, 0);
  std::vector<Point> path;
  nin_run(kTrue1, kTrue2, kStart, kExact, kExact, kDomain, cfg, rng, &path);
  const NegotiationTrace idm = idm_run(kTrue1, kTrue2, kStart, kDomain);
  const std::size_t common = std::min(path.size(), idm.points.size());
  EXPECT_GE(common, idm.points.size() - 1);
  for (std::size_t t = 0; t < common; ++t) EXPECT_LT(norm(path[t] - idm.points[t]), 1e-9);
}

TEST(NinConfig, Validation) {
  NinConfig cfg;
  cfg.M = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.movement_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  Rng rng = stream_rng(0, 0);
  EXPECT_THROW(nin_run(kTrue1, kTrue2, {0, 4}, kDefault, kDefault, kDomain, {}, rng), DomainError);
}

TEST(MreEstimate, DeterministicAcrossThreadCounts) {
  const Scenario s = paper_scenario();
  const MreEstimate a = mre_estimate(s, kDefault, 3, 64, {}, 42, 1);
  const MreEstimate b = mre_estimate(s, kDefault, 3, 64, {}, 42, 4);
  const MreEstimate c = mre_estimate(s, kDefault, 3, 64, {}, 43, 1);
  EXPECT_EQ(a.mre, b.mre);
  EXPECT_EQ(a.std_error, b.std_error);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].settlement, b.trials[i].settlement);
    EXPECT_EQ(a.trials[i].total_rounds, b.trials[i].total_rounds);
  }
  EXPECT_NE(a.mre, c.mre);
}

TEST(MreEstimate, LargerMIsCloser) {
  const Scenario s = paper_scenario();
  const MreEstimate m1 = mre_estimate(s, kDefault, 1, 300, {}, 12, 2);
  const MreEstimate m10 = mre_estimate(s, kDefault, 10, 300, {}, 12, 2);
  EXPECT_LT(m10.mre, m1.mre);
}

TEST(MreEstimate, SingleTrialOnFrontier) {
  Scenario s = paper_scenario();
  s.x0 = frontier_point(s.true_frontier(), 0.5);
  const MreEstimate e = mre_estimate(s, kDefault, 5, 1, {}, 0);
  EXPECT_EQ(e.mre, 0.0);
  EXPECT_TRUE(std::isnan(e.std_error));
  EXPECT_THROW(mre_estimate(s, kDefault, 5, 0, {}, 0), ConfigError);
}

TEST(ImproveProbability, Extremes) {
  const Point on = frontier_point(frontier(), 0.5);
  EXPECT_EQ(improve_probability(kTrue1, kTrue2, on, kDefault, kDefault, 2000, 1, kDomain), 0.0);
  EXPECT_EQ(improve_probability(kTrue1, kTrue2, kStart, kExact, kExact, 100, 1, kDomain), 1.0);
  const Point near = on + Point{0.1, 0.1};
  const double eps = improve_probability(kTrue1, kTrue2, near, kDefault, kDefault, 5000, 1, kDomain);
  EXPECT_GT(eps, 0.05);
  EXPECT_LT(eps, 0.95);
}

TEST(PrematureStop, MatchesGeometricLaw) {
  const Point near = frontier_point(frontier(), 0.5) + Point{0.1, 0.1};
  const double eps =
      improve_probability(kTrue1, kTrue2, near, kDefault, kDefault, 100000, 101, kDomain);
  constexpr int kTrials = 10000;
  for (const int M : {1, 3, 6}) {
    const double freq = premature_stop_frequency(kTrue1, kTrue2, near, kDefault, kDefault, M,
                                                 kTrials, 202, kDomain);
    const double p = std::pow(1.0 - eps, M);
    EXPECT_LT(std::abs(freq - p), 3 * std::sqrt(p * (1 - p) / kTrials)) << "M=" << M;
  }
}

}  // namespace
}  // namespace negotiation
