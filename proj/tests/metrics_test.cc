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

#include "sea/metrics.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "sea/errors.h"
#include "sea/rng.h"

namespace sea {
namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

Trace LinearTrace(const std::vector<Point>& xs, const std::vector<Point>& gs) {
  Trace tr;
  const int d = static_cast<int>(xs.front().size());
  tr.mean_curvature_sum = Matrix::Zero(d, d);
  tr.mean_linear_sum = Point::Zero(d);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    RoundRecord r;
    r.t = static_cast<int>(i) + 1;
    r.x = xs[i];
    r.g = gs[i];
    r.xi = LossSpec::Linear(gs[i]);
    r.loss_value = gs[i].dot(xs[i]);
    tr.mean_linear_sum += gs[i];
    tr.records.push_back(r);
  }
  return tr;
}

TEST(BestComparatorTest, Examples) {
  const std::vector<Point> one = {P({3, 4})};
  const Point u = BestComparator(one, FeasibleSet::UnitBall(2));
  EXPECT_NEAR(u[0], -0.6, 1e-15);
  EXPECT_NEAR(u[1], -0.8, 1e-15);
  const std::vector<Point> cancel = {P({1, 2}), P({-1, -2})};
  EXPECT_EQ(BestComparator(cancel, FeasibleSet::MakeBall(P({0.5, 0}), 1)), P({0.5, 0}));
  const std::vector<Point> three = {P({1}), P({-1}), P({1})};
  EXPECT_EQ(BestComparator(three, FeasibleSet::MakeBox(P({-1}), P({1}))), P({-1}));
  EXPECT_THROW(BestComparator(std::vector<Point>{}, FeasibleSet::UnitBall(1)), ContractError);
}

TEST(BestComparatorTest, BeatsRandomPoints) {
  CounterRng rng(2);
  const FeasibleSet set = FeasibleSet::MakeBox(P({-1, 0}), P({1, 3}));
  std::vector<Point> gs;
  for (int i = 0; i < 10; ++i) gs.push_back(P({rng.Normal(), rng.Normal()}));
  const Point u = BestComparator(gs, set);
  Point sum = Point::Zero(2);
  for (const Point& g : gs) sum += g;
  for (int k = 0; k < 1000; ++k) {
    const Point q = P({-1 + 2 * rng.Uniform(), 3 * rng.Uniform()});
    EXPECT_LE(sum.dot(u), sum.dot(q) + 1e-12);
  }
}

TEST(RegretCurveTest, Examples) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  const RegretCurve single = ComputeRegretCurve(LinearTrace({P({0, 0})}, {P({1, 0})}), ball);
  EXPECT_EQ(single.comparator, P({-1, 0}));
  EXPECT_DOUBLE_EQ(single.linear[0], 1.0);
  EXPECT_DOUBLE_EQ(single.value[0], 1.0);

  const RegretCurve zero =
      ComputeRegretCurve(LinearTrace({P({0.1, 0}), P({0, 0.3})}, {P({0, 0}), P({0, 0})}), ball);
  EXPECT_EQ(zero.linear, std::vector<double>({0.0, 0.0}));

  const RegretCurve matched = ComputeRegretCurve(
      LinearTrace({P({-1, 0}), P({-1, 0})}, {P({1, 0}), P({2, 0})}), ball);
  EXPECT_EQ(matched.linear, std::vector<double>({0.0, 0.0}));
}

TEST(RegretCurveTest, Telescopes) {
  CounterRng rng(8);
  std::vector<Point> xs, gs;
  for (int i = 0; i < 50; ++i) {
    xs.push_back(P({rng.Uniform() - 0.5, rng.Uniform() - 0.5}));
    gs.push_back(P({rng.Normal(), rng.Normal()}));
  }
  const Trace tr = LinearTrace(xs, gs);
  const RegretCurve c = ComputeRegretCurve(tr, FeasibleSet::UnitBall(2));
  for (std::size_t k = 1; k < c.linear.size(); ++k) {
    EXPECT_NEAR(c.linear[k] - c.linear[k - 1], gs[k].dot(xs[k] - c.comparator), 1e-12);
  }
}

TEST(CumAggregatesTest, Examples) {
  Trace tr = LinearTrace({P({0}), P({0}), P({0}), P({0})}, {P({1}), P({1}), P({1}), P({1})});
  for (RoundRecord& r : tr.records) r.sigma_sq = 1.0;
  CumAggregates a = ComputeCumAggregates(tr);
  EXPECT_DOUBLE_EQ(a.sigma_sq_cum, 4.0);
  EXPECT_DOUBLE_EQ(a.sigma_bar, 1.0);
  EXPECT_DOUBLE_EQ(a.variation_bar, 0.0);
  tr.records[2].variation_sq = 9.0;
  tr.records[1].sigma_sq = 3.0;
  a = ComputeCumAggregates(tr);
  EXPECT_DOUBLE_EQ(a.variation_sq_cum, 9.0);
  EXPECT_DOUBLE_EQ(a.variation_bar, 1.5);
  EXPECT_DOUBLE_EQ(a.variation_sq_max, 9.0);
  EXPECT_DOUBLE_EQ(a.sigma_sq_max, 3.0);
}

TEST(BoundTest, ConvexBoundExamples) {
  EXPECT_NEAR(Theorem1Bound(1, 1, 0, 1, 0, 0, 100), 3 * std::sqrt(2.0) / 2 + 1 + 4, 1e-12);
  EXPECT_NEAR(Theorem1Bound(1, 1, 0, 1, 0, 0, 100), 7.1213, 1e-4);
  const double base = Theorem1Bound(2, 1, 0.5, 3, 0, 0, 1);
  const double lead1 = Theorem1Bound(2, 1, 0.5, 3, 0.4, 0.2, 1000) - base;
  const double lead2 = Theorem1Bound(2, 1, 0.5, 3, 0.4, 0.2, 2000) - base;
  EXPECT_NEAR(lead2 / lead1, std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(Theorem1Bound(2, 1, 0, 3, 0, 0, 10), Theorem1Bound(2, 1, 0, 3, 0, 0, 1e6));
  EXPECT_NEAR(WorstCaseBound(2, 1, 100), 3 * std::sqrt(2.0) * 2 * 10 + 8, 1e-12);
}

TEST(BoundTest, StronglyConvexBoundExamples) {
  EXPECT_NEAR(Theorem3Bound(1, 1, 1, 0, 1, 0, std::exp(1.0)), 8 + 4 * std::log(17.0), 1e-12);
  EXPECT_NEAR(Theorem3Bound(1, 1, 1, 0, 1, 0, std::exp(1.0)), 19.33, 0.01);
  EXPECT_DOUBLE_EQ(Theorem3Bound(1, 1, 1, 2, 0, 0, 10), Theorem3Bound(1, 1, 1, 2, 0, 0, 1e5));
  // GD term and the statement form.
  EXPECT_NEAR(Theorem3Bound(1, 1, 1, 2, 0, 0, 10) -
                  Theorem3Bound(1, 1, 1, 2, 0, 0, 10, Theorem3Form::kStatement),
              2.0, 1e-12);
  // mu -> 2 mu with L fixed halves the first term.
  const double first1 = Theorem3Bound(1, 0, 1, 0, 1, 1, 100, Theorem3Form::kStatement);
  const double first2 = Theorem3Bound(2, 0, 1, 0, 1, 1, 100, Theorem3Form::kStatement);
  EXPECT_NEAR(first2, first1 / 2, 1e-12);
  EXPECT_THROW(Theorem3Bound(0, 1, 1, 1, 1, 1, 10), ContractError);
  EXPECT_THROW(Theorem3Bound(1, 1, 1, 1, 1, 1, 1), ContractError);
}

TEST(DiagnosticsTest, Examples) {
  const FeasibleSet line = FeasibleSet::UnitBall(1);
  const std::vector<LossSpec> pm = {LossSpec::Linear(P({1})), LossSpec::Linear(P({-1}))};
  const GradualVariationDiagnostics a = ComputeGradualVariation(pm, P({0}), line);
  EXPECT_DOUBLE_EQ(a.var_t, 2.0);
  EXPECT_DOUBLE_EQ(a.d2, 4.0);
  EXPECT_TRUE(a.exact);
  const std::vector<LossSpec> same(5, LossSpec::Quadratic(Matrix::Identity(1, 1), P({0.3})));
  const GradualVariationDiagnostics b = ComputeGradualVariation(same, P({0.5}), line);
  EXPECT_DOUBLE_EQ(b.var_t, 0.0);
  EXPECT_DOUBLE_EQ(b.d2, 0.0);
}

TEST(DiagnosticsTest, MixedCurvatureIsFlaggedInexact) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  const std::vector<LossSpec> l = {LossSpec::Quadratic(e1, P({0, 0})),
                                   LossSpec::Quadratic(e2, P({0, 0}))};
  const GradualVariationDiagnostics d = ComputeGradualVariation(l, P({1, 0}), ball);
  EXPECT_FALSE(d.exact);
  EXPECT_NEAR(d.d2, 1.0, 1e-8);         // sup ||(x1, -x2)||^2 on the disk
  EXPECT_DOUBLE_EQ(d.var_t, 0.5);       // gradients (1,0), (0,0) at the probe
}

TEST(MinimizeQuadraticTest, MatchesClosedFormsAndGrid) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  EXPECT_EQ(MinimizeQuadratic(Matrix::Zero(2, 2), P({0, 2}), ball), P({0, -1}));
  EXPECT_EQ(MinimizeQuadratic(2 * Matrix::Identity(2, 2), P({-1, 0}), ball), P({0.5, 0}));
  Matrix h(2, 2);
  h << 4, 1, 1, 0.5;
  const Point lin = P({-3, 1});
  const Point x = MinimizeQuadratic(h, lin, ball);
  auto f = [&](const Point& y) { return 0.5 * y.dot(h * y) + lin.dot(y); };
  for (int i = 0; i < 2000; ++i) {
    const double a = 2 * M_PI * i / 2000.0;
    for (double r : {0.25, 0.5, 0.75, 1.0}) {
      EXPECT_LE(f(x), f(P({r * std::cos(a), r * std::sin(a)})) + 1e-9);
    }
  }
}

}  // namespace
}  // namespace sea
