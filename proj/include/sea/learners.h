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

#ifndef SEA_LEARNERS_H_
#define SEA_LEARNERS_H_

#include <string>
#include <variant>

#include "sea/geometry.h"

namespace sea {

// Scale of the quadratic regularizer in the OFTRL objective
//   <x, M_t + sum_{s<t} g_s> + scale * ||x||^2 / eta_t.
enum class RegularizerScale {
  kUnit = 1,    // ||x||^2 / eta_t (default).
  kDouble = 2,  // 2 ||x||^2 / eta_t.
};

struct OftrlState {
  double diameter = 0.0;
  double nu = 0.0;
  Point grad_sum;
  // Optimistic guess M_t for the upcoming gradient (M_1 = 0).
  Point m_next;
  // nu + sum_{s<t} eta_s ||g_s - M_s||^2.
  double eta_denominator = 0.0;
  // eta_t = D^2 / eta_denominator.
  double eta_current = 0.0;
  int t = 1;
};

// Optimistic FTRL with M_t = g_{t-1} and the self-tuning step size
// eta_t = D^2 / (nu + sum_{s<t} eta_s ||g_s - M_s||^2).
//
// Predict() and Observe() must alternate; anything else throws
// ProtocolError.
class Oftrl {
 public:
  Oftrl(const FeasibleSet& set, double nu,
        RegularizerScale scale = RegularizerScale::kUnit);

  Point Predict();
  void Observe(const Point& g);

  const OftrlState& state() const { return state_; }
  double eta() const { return state_.eta_current; }
  const FeasibleSet& set() const { return set_; }

 private:
  FeasibleSet set_;
  RegularizerScale scale_;
  OftrlState state_;
  bool awaiting_observe_ = false;
};

// nu = L D^2 + D G^2, the tuning for known smoothness and gradient bound.
double DefaultNu(double diameter, double gradient_bound, double smoothness);
// nu = 2 D G, the tuning for the deterministic worst-case bound.
double WorstCaseNu(double diameter, double gradient_bound);

struct OftlState {
  double mu = 0.0;
  Point x_sum;
  Point grad_sum;
  Point m_next;
  int t = 1;
};

// Optimistic follow-the-leader on the surrogate losses
//   l_s(x) = <g_s, x - x_s> + mu/2 ||x - x_s||^2,
// with M_t = g_{t-1}. The surrogate sum has curvature (t-1) mu I, so each
// prediction is a single projection of its unconstrained minimizer.
class Oftl {
 public:
  Oftl(const FeasibleSet& set, double mu);

  Point Predict();
  // Uses the point returned by the matching Predict() as x_t.
  void Observe(const Point& g);

  const OftlState& state() const { return state_; }
  const FeasibleSet& set() const { return set_; }

 private:
  FeasibleSet set_;
  OftlState state_;
  Point last_x_;
  bool awaiting_observe_ = false;
};

// Projected online gradient descent step.
Point OgdStep(const Point& x, const Point& g, double step, const FeasibleSet& set);

// OGD with step_t = scale * D / (G sqrt(t)), starting from project(origin).
class Ogd {
 public:
  Ogd(const FeasibleSet& set, double gradient_bound, double step_scale = 1.0);

  Point Predict();
  void Observe(const Point& g);
  // Step used for the pending round.
  double step() const;
  int t() const { return t_; }

 private:
  FeasibleSet set_;
  double base_step_;
  Point x_;
  int t_ = 1;
  bool awaiting_observe_ = false;
};

// Type-erased learner for the harness.
class Learner {
 public:
  using Variant = std::variant<Oftrl, Oftl, Ogd>;

  explicit Learner(Variant v) : v_(std::move(v)) {}

  Point Predict();
  void Observe(const Point& g);
  // Step size in force for the round being played: eta_t for OFTRL, the
  // OGD step, 0 for OFTL.
  double CurrentStep() const;
  std::string name() const;
  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

}  // namespace sea

#endif  // SEA_LEARNERS_H_
