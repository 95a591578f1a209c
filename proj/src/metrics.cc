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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sea/errors.h"

namespace sea {
namespace {

bool IsScaledIdentity(const Matrix& h, double* scale) {
  const double c = h(0, 0);
  const double tol = 1e-14 * std::max(1.0, std::abs(c));
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      const double expected = i == j ? c : 0.0;
      if (std::abs(h(i, j) - expected) > tol) return false;
    }
  }
  *scale = c;
  return true;
}

}  // namespace

Point BestComparator(std::span<const Point> grads, const FeasibleSet& set) {
  if (grads.empty()) throw ContractError("BestComparator needs at least one gradient");
  Point sum = Point::Zero(grads.front().size());
  for (const Point& g : grads) sum += g;
  return LinearMinimize(sum, set);
}

Point BestComparator(const Trace& trace, const FeasibleSet& set) {
  if (trace.records.empty()) throw ContractError("BestComparator on an empty trace");
  Point sum = Point::Zero(set.dim());
  for (const RoundRecord& r : trace.records) sum += r.g;
  return LinearMinimize(sum, set);
}

Point MinimizeQuadratic(const Matrix& h, const Point& lin, const FeasibleSet& set) {
  if ((h.array() == 0.0).all()) return LinearMinimize(lin, set);
  double c = 0.0;
  if (IsScaledIdentity(h, &c) && c > 0.0) return Project(-lin / c, set);

  const double top = LargestEigenvalue(h);
  const double step = 1.0 / top;
  Point x = Project(set.Center(), set);
  Point y = x;
  double momentum = 1.0;
  for (int iter = 0; iter < 200000; ++iter) {
    Point next = Project(y - step * (h * y + lin), set);
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double moved = (next - x).norm();
    y = next + ((momentum - 1.0) / next_momentum) * (next - x);
    x = std::move(next);
    momentum = next_momentum;
    if (moved <= 1e-13 * (1.0 + x.norm())) break;
  }
  return x;
}

Point MeanLossComparator(const Trace& trace, const FeasibleSet& set) {
  if (trace.records.empty()) throw ContractError("MeanLossComparator on an empty trace");
  return MinimizeQuadratic(trace.mean_curvature_sum, trace.mean_linear_sum, set);
}

RegretCurve ComputeRegretCurve(const Trace& trace, const FeasibleSet& set) {
  return ComputeRegretCurve(trace, BestComparator(trace, set));
}

RegretCurve ComputeRegretCurve(const Trace& trace, const Point& comparator) {
  if (trace.records.empty()) throw ContractError("regret curve of an empty trace");
  RegretCurve curve;
  curve.comparator = comparator;
  curve.linear.reserve(trace.records.size());
  curve.value.reserve(trace.records.size());
  double linear = 0.0;
  double value = 0.0;
  for (const RoundRecord& r : trace.records) {
    linear += r.g.dot(r.x - comparator);
    value += r.loss_value - Value(r.xi, comparator);
    curve.linear.push_back(linear);
    curve.value.push_back(value);
  }
  return curve;
}

CumAggregates ComputeCumAggregates(const Trace& trace) {
  if (trace.records.empty()) throw ContractError("aggregates of an empty trace");
  CumAggregates agg;
  for (const RoundRecord& r : trace.records) {
    agg.sigma_sq_cum += r.sigma_sq;
    agg.variation_sq_cum += r.variation_sq;
    agg.sigma_sq_max = std::max(agg.sigma_sq_max, r.sigma_sq);
    agg.variation_sq_max = std::max(agg.variation_sq_max, r.variation_sq);
  }
  const double t = static_cast<double>(trace.records.size());
  agg.sigma_bar = std::sqrt(agg.sigma_sq_cum / t);
  agg.variation_bar = std::sqrt(agg.variation_sq_cum / t);
  return agg;
}

double Theorem1Bound(double diameter, double gradient_bound, double smoothness,
                     double nu, double sigma_bar, double variation_bar, double horizon) {
  if (!(diameter > 0.0) || !(gradient_bound > 0.0) || !(nu > 0.0)) {
    throw ContractError("Theorem1Bound needs positive D, G and nu");
  }
  if (smoothness < 0.0 || sigma_bar < 0.0 || variation_bar < 0.0 || horizon < 0.0) {
    throw ContractError("Theorem1Bound needs nonnegative L, sigma, Sigma and T");
  }
  const double d = diameter;
  const double g = gradient_bound;
  const double l = smoothness;
  constexpr double kSqrt2 = std::numbers::sqrt2;
  return d * (6.0 * sigma_bar + 3.0 * kSqrt2 * variation_bar) * std::sqrt(horizon) +
         1.5 * kSqrt2 * d * g + nu + (4.0 * d * d * g * g + 9.0 * l * l * d * d * d * d) / nu;
}

double WorstCaseBound(double diameter, double gradient_bound, double horizon) {
  const double dg = diameter * gradient_bound;
  return 3.0 * std::numbers::sqrt2 * dg * std::sqrt(horizon) + 4.0 * dg;
}

double Theorem3Bound(double mu, double smoothness, double diameter,
                     double gradient_bound, double sigma_max, double variation_max,
                     double horizon, Theorem3Form form) {
  if (!(mu > 0.0)) throw ContractError("Theorem3Bound needs mu > 0");
  if (!(horizon >= 2.0)) throw ContractError("Theorem3Bound needs T >= 2");
  const double l = smoothness;
  const double d = diameter;
  double bound =
      (8.0 * sigma_max * sigma_max + 4.0 * variation_max * variation_max) *
          std::log(horizon) / mu +
      4.0 * d * d * l * l / mu * std::log(1.0 + 16.0 * l / mu);
  if (form == Theorem3Form::kWithFirstRoundTerm) bound += gradient_bound * d;
  return bound;
}

GradualVariationDiagnostics ComputeGradualVariation(std::span<const LossSpec> losses,
                                                    const Point& probe,
                                                    const FeasibleSet& set) {
  if (losses.empty()) throw ContractError("diagnostics need at least one loss");
  GradualVariationDiagnostics out;
  const double n = static_cast<double>(losses.size());
  Point mean = Point::Zero(probe.size());
  std::vector<Point> grads;
  grads.reserve(losses.size());
  for (const LossSpec& l : losses) {
    grads.push_back(Grad(l, probe));
    mean += grads.back();
    out.exact = out.exact && SameCurvature(l, losses.front());
  }
  mean /= n;
  for (const Point& g : grads) out.var_t += (g - mean).squaredNorm();
  for (std::size_t t = 1; t < losses.size(); ++t) {
    out.d2 += LossVariation(losses[t], losses[t - 1], set);
  }
  return out;
}

}  // namespace sea
