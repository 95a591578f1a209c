// Copyright 2026 The sea-oco Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sea/environments.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sea/errors.h"

namespace sea {
namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

// Drives an environment with a fixed iterate and keeps the history.
struct Driver {
  explicit Driver(Environment e, std::uint64_t key = 1) : env(std::move(e)), key(key) {}
  StepResult Next(const Point& x) {
    const int t = static_cast<int>(history.size()) + 1;
    CounterRng rng = CounterRng::ForRound(key, t);
    StepResult r = env.Step(t, x, history, rng);
    RoundRecord rec;
    rec.t = t;
    rec.x = x;
    rec.xi = r.sample;
    history.push_back(rec);
    return r;
  }
  Environment env;
  std::uint64_t key;
  std::vector<RoundRecord> history;
};

TEST(IidTest, SameDistributionEveryRound) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  Driver d(Environment(
      "iid", ball, Iid(DistributionSpec::MakeSphereNoise(LossSpec::Linear(P({1, 0})), 1), ball)));
  for (int t = 1; t <= 20; ++t) {
    const StepResult r = d.Next(P({0, 0}));
    EXPECT_DOUBLE_EQ(r.sigma_sq, 1.0);
    EXPECT_DOUBLE_EQ(r.variation_sq, 0.0);
    EXPECT_EQ(MeanGrad(r.dist, P({0.3, 0.3})), P({1, 0}));
    EXPECT_NEAR((r.sample.linear_term() - P({1, 0})).norm(), 1.0, 1e-12);
  }
  EXPECT_EQ(d.env.convention(), VariationConvention::kRepeatFirst);
}

TEST(EnvironmentTest, EnforcesRoundOrder) {
  const FeasibleSet ball = FeasibleSet::UnitBall(1);
  Environment env("script", ball, AdversarialScript({LossSpec::Linear(P({1}))}));
  std::vector<RoundRecord> none;
  CounterRng rng(1);
  EXPECT_THROW(env.Step(2, P({0}), none, rng), ProtocolError);
  env.Step(1, P({0}), none, rng);
  std::vector<RoundRecord> one(1);
  EXPECT_THROW(env.Step(2, P({0}), one, rng), ProtocolError);  // script exhausted
}

TEST(AdversarialScriptTest, ReplaysLossesAsDirac) {
  const FeasibleSet ball = FeasibleSet::UnitBall(1);
  Driver d(Environment("script", ball,
                       AdversarialScript({LossSpec::Linear(P({1})), LossSpec::Linear(P({-1})),
                                          LossSpec::Linear(P({-1}))})));
  const StepResult r1 = d.Next(P({0}));
  const StepResult r2 = d.Next(P({0}));
  const StepResult r3 = d.Next(P({0}));
  EXPECT_EQ(r1.sample.linear_term(), P({1}));
  EXPECT_EQ(r2.sample.linear_term(), P({-1}));
  EXPECT_DOUBLE_EQ(r1.variation_sq, 0.0);
  EXPECT_DOUBLE_EQ(r2.variation_sq, 4.0);
  EXPECT_DOUBLE_EQ(r3.variation_sq, 0.0);
  EXPECT_DOUBLE_EQ(r2.sigma_sq, 0.0);
}

TEST(CorruptedIidTest, BudgetCheckedAtConstruction) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  const auto base = DistributionSpec::MakeSphereNoise(LossSpec::Linear(P({0, 0})), 1);
  std::vector<Point> c(10, P({1, 0}));
  EXPECT_NO_THROW(CorruptedIid(base, c, 10.0, ball));
  EXPECT_THROW(CorruptedIid(base, c, 9.0, ball), ConfigError);
}

TEST(CorruptedIidTest, ChargesFirstCorruptionAndShiftsMean) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  const auto base = DistributionSpec::MakeSphereNoise(LossSpec::Linear(P({0.5, 0})), 1);
  Driver d(Environment("corrupted", ball,
                       CorruptedIid(base, MakeCorruptionSchedule(3.0, 1.0, P({2, 0})), 3.0, ball)));
  EXPECT_EQ(d.env.convention(), VariationConvention::kZeroBefore);
  const StepResult r1 = d.Next(P({0, 0}));
  EXPECT_DOUBLE_EQ(r1.variation_sq, 1.0);  // c_0 = 0, c_1 = (1,0)
  EXPECT_EQ(MeanGrad(r1.dist, P({0, 0})), P({1.5, 0}));
  const StepResult r2 = d.Next(P({0, 0}));
  EXPECT_DOUBLE_EQ(r2.variation_sq, 4.0);  // (1,0) -> (-1,0)
  d.Next(P({0, 0}));
  const StepResult r4 = d.Next(P({0, 0}));
  EXPECT_DOUBLE_EQ(r4.variation_sq, 1.0);  // (1,0) -> 0
  const StepResult r5 = d.Next(P({0, 0}));
  EXPECT_DOUBLE_EQ(r5.variation_sq, 0.0);
}

TEST(CorruptionScheduleTest, SpendsBudgetExactly) {
  const auto s = MakeCorruptionSchedule(2.5, 1.0, P({0, 3}));
  ASSERT_EQ(s.size(), 3u);
  double spent = 0.0;
  for (const Point& c : s) spent += c.norm();
  EXPECT_NEAR(spent, 2.5, 1e-12);
  EXPECT_EQ(s[0], P({0, 1}));
  EXPECT_EQ(s[1], P({0, -1}));
  EXPECT_NEAR(s[2][1], 0.5, 1e-12);
  EXPECT_TRUE(MakeCorruptionSchedule(0.0, 1.0, P({1, 0})).empty());
}

std::vector<LossSpec> LinearPool(std::initializer_list<double> values) {
  std::vector<LossSpec> pool;
  for (double v : values) pool.push_back(LossSpec::Linear(P({v})));
  return pool;
}

TEST(RomTest, RemovesDrawnMember) {
  const FeasibleSet ball = FeasibleSet::UnitBall(1);
  Driver d(Environment("rom", ball, Rom(LinearPool({1, 2, 3}))), 77);
  const StepResult r1 = d.Next(P({0}));
  const StepResult r2 = d.Next(P({0}));
  const auto& active2 = std::get<FiniteUniform>(r2.dist.variant()).active;
  const auto& all1 = std::get<FiniteUniform>(r1.dist.variant()).active;
  EXPECT_EQ(all1.size(), 3u);
  ASSERT_EQ(active2.size(), 2u);
  std::set<double> left;
  for (std::size_t i : active2) left.insert((*std::get<FiniteUniform>(r1.dist.variant()).pool)[i].linear_term()[0]);
  EXPECT_EQ(left.count(r1.sample.linear_term()[0]), 0u);
  EXPECT_THROW(
      {
        d.Next(P({0}));
        d.Next(P({0}));
      },
      ProtocolError);
}

TEST(RomTest, ReportedVarianceMatchesEnumeration) {
  const FeasibleSet ball = FeasibleSet::UnitBall(1);
  Driver d(Environment("rom", ball, Rom(LinearPool({1, 2, 4, 7, -3}))), 5);
  for (int t = 1; t <= 5; ++t) {
    const StepResult r = d.Next(P({0}));
    EXPECT_NEAR(r.sigma_sq, VarianceBound(r.dist, ball), 1e-12);
  }
}

TEST(RomTest, PermutationsAreExchangeable) {
  const FeasibleSet ball = FeasibleSet::UnitBall(1);
  std::map<std::vector<int>, int> counts;
  const int runs = 10000;
  for (int s = 0; s < runs; ++s) {
    Driver d(Environment("rom", ball, Rom(LinearPool({0, 1, 2, 3}))),
             CounterRng::TrialKey(s, 4));
    std::vector<int> perm;
    for (int t = 0; t < 4; ++t) perm.push_back(static_cast<int>(d.Next(P({0})).sample.linear_term()[0]));
    ++counts[perm];
  }
  ASSERT_EQ(counts.size(), 24u);
  const double p = 1.0 / 24.0;
  const double se = std::sqrt(p * (1 - p) / runs);
  for (const auto& [perm, n] : counts) {
    EXPECT_LE(std::abs(static_cast<double>(n) / runs - p), 3 * se);
  }
}

TEST(MultiPassRomTest, ReshufflesBetweenPasses) {
  const FeasibleSet ball = FeasibleSet::UnitBall(1);
  Driver d(Environment("mp", ball, MultiPassRom(LinearPool({1, 2, 3}), 3)), 4);
  std::multiset<double> seen;
  for (int t = 1; t <= 9; ++t) {
    const StepResult r = d.Next(P({0}));
    seen.insert(r.sample.linear_term()[0]);
    if (t == 4 || t == 7) EXPECT_GT(r.variation_sq, 0.0);
  }
  EXPECT_EQ(seen.count(1), 3u);
  EXPECT_EQ(seen.count(3), 3u);
  EXPECT_THROW(d.Next(P({0})), ProtocolError);
}

TEST(ShiftTest, VariationBoundedByEpsilon) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  const double eps = 0.003;
  Driver d(Environment("shift", ball,
                       Shift(LossSpec::Linear(P({0, 0})), P({0.2, 0}), 0.5, eps, 0.3)));
  for (int t = 1; t <= 500; ++t) {
    const StepResult r = d.Next(P({0, 0}));
    EXPECT_LE(r.variation_sq, eps);
    if (t > 1) EXPECT_GT(r.variation_sq, 0.5 * eps);
    EXPECT_DOUBLE_EQ(r.sigma_sq, 0.09);
  }
}

TEST(SwitchTest, CountsSwitches) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  std::vector<DistributionSpec> dists = {
      DistributionSpec::MakeSphereNoise(LossSpec::Linear(P({1, 0})), 0.5),
      DistributionSpec::MakeSphereNoise(LossSpec::Linear(P({0, 1})), 0.5),
      DistributionSpec::MakeDirac(LossSpec::Linear(P({-1, 0})))};
  Driver d(Environment("switch", ball, Switch(dists, {5, 9, 20, 31}, ball)));
  int positive = 0;
  for (int t = 1; t <= 40; ++t) positive += d.Next(P({0, 0})).variation_sq > 0.0 ? 1 : 0;
  EXPECT_EQ(positive, 4);
}

TEST(RademacherLbTest, GradientExamples) {
  EXPECT_EQ(RademacherLbGradient(1, 2, 3, 2, P({1.5}), 1), 0.0);
  EXPECT_DOUBLE_EQ(RademacherLbGradient(1, 2, 3, 1, P({2}), 1), 1.5);
  EXPECT_DOUBLE_EQ(RademacherLbGradient(1, 2, 3, 3, P({1}), -1), -3.0 * 1 / 4);
  EXPECT_THROW(RademacherLbGradient(1, 2, 3, 1, P({0.5}), 1), ContractError);
  EXPECT_THROW(RademacherLb(1, 3, 1), ConfigError);    // a < b/2
  EXPECT_THROW(RademacherLb(0.5, 1, 1), ConfigError);  // a < 1
}

TEST(RademacherLbTest, GradientMagnitudeWindow) {
  const double a = 1.2, b = 2.0, g = 1.5;
  const FeasibleSet box = FeasibleSet::MakeBox(P({a}), P({b}));
  Driver d(Environment("lb", box, RademacherLb(a, b, g)), 8);
  CounterRng rng(1);
  int plus = 0;
  for (int t = 1; t <= 400; ++t) {
    const Point x = P({a + (b - a) * rng.Uniform()});
    const double z = d.Next(x).sample.linear_term()[0];
    if (t % 2 == 0) {
      EXPECT_EQ(z, 0.0);
    } else {
      EXPECT_GE(std::abs(z), g * a / (2 * b) - 1e-15);
      EXPECT_LE(std::abs(z), g / 2 + 1e-15);
      plus += z > 0 ? 1 : 0;
    }
  }
  EXPECT_GT(plus, 60);
  EXPECT_LT(plus, 140);
}

TEST(CoordinateQuadraticTest, VarianceAndConstants) {
  const int dim = 4;
  const FeasibleSet ball = FeasibleSet::UnitBall(dim);
  Environment env("coord", ball, CoordinateQuadratic(dim, ball));
  EXPECT_NEAR(std::get<CoordinateQuadratic>(env.state()).sigma_sq(), (dim - 1.0) / (dim * dim),
              1e-9);
  EXPECT_NEAR(env.constants().smoothness, 1.0 / dim, 1e-9);
  EXPECT_NEAR(env.constants().strong_convexity, 1.0 / dim, 1e-9);
}

TEST(EnvironmentTest, ConstantsFromMeanLosses) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2, 2.0);
  Matrix a(2, 2);
  a << 3, 0, 0, 0.5;
  Environment env("iid", ball,
                  Iid(DistributionSpec::MakeSphereNoise(LossSpec::Quadratic(a, P({1, 0})), 0.5), ball));
  EXPECT_DOUBLE_EQ(env.constants().diameter, 4.0);
  EXPECT_NEAR(env.constants().smoothness, 3.0, 1e-9);
  EXPECT_NEAR(env.constants().strong_convexity, 0.5, 1e-9);
  EXPECT_NEAR(env.constants().gradient_bound, 3 * 2 + 1 + 0.5, 1e-9);
}

}  // namespace
}  // namespace sea
