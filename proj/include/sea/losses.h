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

#ifndef SEA_LOSSES_H_
#define SEA_LOSSES_H_

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "sea/geometry.h"
#include "sea/rng.h"

namespace sea {

struct LinearLoss {
  Point g;
};

// 1/2 x^T A x + <b, x> with A symmetric PSD.
struct QuadraticLoss {
  Matrix a;
  Point b;
};

// A member f(., xi) of a parametric loss family. Both families have affine
// gradient fields, grad f(x) = A x + b, with A = 0 for linear losses.
class LossSpec {
 public:
  static LossSpec Linear(Point g);
  // Throws ConfigError if A is not square, not symmetric, or sized
  // differently from b.
  static LossSpec Quadratic(Matrix a, Point b);

  int dim() const;
  bool is_linear() const { return std::holds_alternative<LinearLoss>(form_); }
  // g for linear losses, b for quadratics.
  const Point& linear_term() const;
  // A for quadratics, nullptr for linear losses.
  const Matrix* curvature() const;
  Matrix CurvatureOrZero() const;

  const std::variant<LinearLoss, QuadraticLoss>& form() const { return form_; }

 private:
  explicit LossSpec(std::variant<LinearLoss, QuadraticLoss> form)
      : form_(std::move(form)) {}
  std::variant<LinearLoss, QuadraticLoss> form_;
};

double Value(const LossSpec& loss, const Point& x);
Point Grad(const LossSpec& loss, const Point& x);
// Same curvature and a linear term shifted by `shift`.
LossSpec AddLinear(const LossSpec& loss, const Point& shift);
// True when both gradient fields differ by a constant (equal curvature).
bool SameCurvature(const LossSpec& a, const LossSpec& b);
// sup over the set of ||grad a(x) - grad b(x)||^2.
double LossVariation(const LossSpec& a, const LossSpec& b, const FeasibleSet& set);
// Upper bound on sup over the set of ||grad f(x)||. Exact for linear
// losses; ||A|| sup||x|| + ||b|| for quadratics.
double GradNormBound(const LossSpec& loss, const FeasibleSet& set);

class DistributionSpec;

struct Dirac {
  LossSpec loss;
};

// grad f(x, xi) = grad base(x) + sigma u, u uniform on the unit sphere.
struct SphereNoise {
  LossSpec base;
  double sigma;
};

// Uniform over pool[active[0..m)]. The pool is shared between rounds.
struct FiniteUniform {
  std::shared_ptr<const std::vector<LossSpec>> pool;
  std::vector<std::size_t> active;
};

// A base distribution plus a deterministic linear corruption <c, x>.
struct Shifted {
  std::shared_ptr<const DistributionSpec> base;
  Point corruption;
};

class DistributionSpec {
 public:
  using Variant = std::variant<Dirac, SphereNoise, FiniteUniform, Shifted>;

  static DistributionSpec MakeDirac(LossSpec loss);
  static DistributionSpec MakeSphereNoise(LossSpec base, double sigma);
  static DistributionSpec MakeFiniteUniform(
      std::shared_ptr<const std::vector<LossSpec>> pool,
      std::vector<std::size_t> active);
  // Uniform over the whole pool.
  static DistributionSpec MakeFiniteUniform(std::vector<LossSpec> pool);
  static DistributionSpec MakeShifted(DistributionSpec base, Point corruption);

  int dim() const;
  const Variant& variant() const { return v_; }

 private:
  explicit DistributionSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Exact mean gradient grad F_D(x).
Point MeanGrad(const DistributionSpec& dist, const Point& x);
// The mean loss F_D as a LossSpec, up to an additive constant.
LossSpec MeanLoss(const DistributionSpec& dist);
// sigma_D^2 = max over the set of E ||grad f(x, xi) - grad F_D(x)||^2.
// Closed form whenever the members share their curvature; otherwise a
// numeric maximization (see MaximizeConvexQuadratic).
double VarianceBound(const DistributionSpec& dist, const FeasibleSet& set);
// sup over the set of ||grad F_a(x) - grad F_b(x)||^2.
double Variation(const DistributionSpec& a, const DistributionSpec& b,
                 const FeasibleSet& set);
// Draws xi ~ D and returns the realized loss f(., xi).
LossSpec Sample(const DistributionSpec& dist, CounterRng& rng);
// Upper bound on sup ||grad f(x, xi)|| over the set and the support of D.
double GradNormBound(const DistributionSpec& dist, const FeasibleSet& set);

Point SampleUnitSphere(int dim, CounterRng& rng);

// sup over the set of ||M x + c||^2 for symmetric M.
double SupSquaredAffine(const Matrix& m, const Point& c,
                        const FeasibleSet& set);

// sup over the set of x^T H x + 2 <h, x> + k for symmetric PSD H.
// Projected gradient ascent from 16 deterministic starts (center, the two
// boundary points along the top eigenvector of H, 13 pseudo-random interior
// points), each run until the objective improves by less than 1e-8
// (relative). Returns the best value observed, a certified lower bound on
// the supremum.
double MaximizeConvexQuadratic(const Matrix& h_mat, const Point& h_vec,
                               double k, const FeasibleSet& set);

}  // namespace sea

#endif  // SEA_LOSSES_H_
