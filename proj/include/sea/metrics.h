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

#ifndef SEA_METRICS_H_
#define SEA_METRICS_H_

#include <span>
#include <vector>

#include "sea/geometry.h"
#include "sea/losses.h"
#include "sea/trace.h"

namespace sea {

// u* = argmin over the set of sum_t <g_t, u>. Throws ContractError on an
// empty list.
Point BestComparator(std::span<const Point> grads, const FeasibleSet& set);
Point BestComparator(const Trace& trace, const FeasibleSet& set);

// argmin over the set of 1/2 u^T H u + <lin, u> for symmetric PSD H.
// Closed form when H is zero or a multiple of the identity; accelerated
// projected gradient otherwise.
Point MinimizeQuadratic(const Matrix& h, const Point& lin, const FeasibleSet& set);

// Best fixed point against the mean losses, argmin_u sum_t F^t(u).
Point MeanLossComparator(const Trace& trace, const FeasibleSet& set);

struct RegretCurve {
  Point comparator;
  // entry k: sum_{t <= k+1} <g_t, x_t - u>.
  std::vector<double> linear;
  // entry k: sum_{t <= k+1} f(x_t, xi_t) - f(u, xi_t).
  std::vector<double> value;
};

// Both series against u* = BestComparator over the full horizon.
RegretCurve ComputeRegretCurve(const Trace& trace, const FeasibleSet& set);
// Both series against a caller-chosen fixed comparator.
RegretCurve ComputeRegretCurve(const Trace& trace, const Point& comparator);

struct CumAggregates {
  double sigma_sq_cum = 0.0;
  double variation_sq_cum = 0.0;
  double sigma_bar = 0.0;
  double variation_bar = 0.0;
  // max_t sigma_t^2 and max_t Sigma_t^2.
  double sigma_sq_max = 0.0;
  double variation_sq_max = 0.0;
};

CumAggregates ComputeCumAggregates(const Trace& trace);

// D (6 sigma_bar + 3 sqrt2 Sigma_bar) sqrt(T) + 3 sqrt2 D G / 2 + nu
//   + (4 D^2 G^2 + 9 L^2 D^4) / nu.
double Theorem1Bound(double diameter, double gradient_bound, double smoothness,
                     double nu, double sigma_bar, double variation_bar, double horizon);

// Deterministic worst-case guarantee of OFTRL tuned with nu = 2DG:
// 3 sqrt2 D G sqrt(T) + 4 D G.
double WorstCaseBound(double diameter, double gradient_bound, double horizon);

enum class Theorem3Form {
  // Includes the +GD term of the first surrogate round.
  kWithFirstRoundTerm,
  // The displayed statement without it.
  kStatement,
};

// (8 sigma_max^2 + 4 Sigma_max^2) log(T) / mu
//   + 4 D^2 L^2 / mu * log(1 + 16 L / mu) [+ G D].
// Requires mu > 0 and T >= 2.
double Theorem3Bound(double mu, double smoothness, double diameter,
                     double gradient_bound, double sigma_max, double variation_max,
                     double horizon,
                     Theorem3Form form = Theorem3Form::kWithFirstRoundTerm);

struct GradualVariationDiagnostics {
  // sum_t ||grad f_t(probe) - mean_s grad f_s(probe)||^2.
  double var_t = 0.0;
  // sum_t sup_x ||grad f_t(x) - grad f_{t-1}(x)||^2 with f_0 := f_1.
  double d2 = 0.0;
  // True when every gradient difference is constant in x, so var_t does
  // not depend on the probe.
  bool exact = true;
};

GradualVariationDiagnostics ComputeGradualVariation(std::span<const LossSpec> losses,
                                                    const Point& probe,
                                                    const FeasibleSet& set);

}  // namespace sea

#endif  // SEA_METRICS_H_
