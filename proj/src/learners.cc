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

#include "sea/learners.h"

#include <cmath>

#include "sea/errors.h"

namespace sea {

Oftrl::Oftrl(const FeasibleSet& set, double nu, RegularizerScale scale)
    : set_(set), scale_(scale) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("OFTRL needs nu > 0");
  const int d = set_.dim();
  state_.diameter = set_.Diameter();
  state_.nu = nu;
  state_.grad_sum = Point::Zero(d);
  state_.m_next = Point::Zero(d);
  state_.eta_denominator = nu;
  state_.eta_current = state_.diameter * state_.diameter / nu;
}

Point Oftrl::Predict() {
  if (awaiting_observe_) throw ProtocolError("OFTRL: predict called twice");
  awaiting_observe_ = true;
  const double c = static_cast<double>(scale_) / state_.eta_current;
  return RegArgmin(state_.m_next + state_.grad_sum, c, set_);
}

void Oftrl::Observe(const Point& g) {
  if (!awaiting_observe_) throw ProtocolError("OFTRL: observe without predict");
  if (g.size() != set_.dim()) throw ConfigError("OFTRL: gradient dimension");
  awaiting_observe_ = false;
  state_.eta_denominator += state_.eta_current * (g - state_.m_next).squaredNorm();
  state_.grad_sum += g;
  state_.m_next = g;
  ++state_.t;
  state_.eta_current = state_.diameter * state_.diameter / state_.eta_denominator;
}

double DefaultNu(double diameter, double gradient_bound, double smoothness) {
  return smoothness * diameter * diameter + diameter * gradient_bound * gradient_bound;
}

double WorstCaseNu(double diameter, double gradient_bound) {
  return 2.0 * diameter * gradient_bound;
}

Oftl::Oftl(const FeasibleSet& set, double mu) : set_(set) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ConfigError("OFTL needs a strong convexity parameter mu > 0");
  }
  const int d = set_.dim();
  state_.mu = mu;
  state_.x_sum = Point::Zero(d);
  state_.grad_sum = Point::Zero(d);
  state_.m_next = Point::Zero(d);
}

Point Oftl::Predict() {
  if (awaiting_observe_) throw ProtocolError("OFTL: predict called twice");
  awaiting_observe_ = true;
  if (state_.t == 1) {
    last_x_ = Project(Point::Zero(set_.dim()), set_);
  } else {
    const double curvature = static_cast<double>(state_.t - 1) * state_.mu;
    last_x_ = Project(
        (state_.mu * state_.x_sum - state_.grad_sum - state_.m_next) / curvature,
        set_);
  }
  return last_x_;
}

void Oftl::Observe(const Point& g) {
  if (!awaiting_observe_) throw ProtocolError("OFTL: observe without predict");
  if (g.size() != set_.dim()) throw ConfigError("OFTL: gradient dimension");
  awaiting_observe_ = false;
  state_.x_sum += last_x_;
  state_.grad_sum += g;
  state_.m_next = g;
  ++state_.t;
}

Point OgdStep(const Point& x, const Point& g, double step, const FeasibleSet& set) {
  if (!(step > 0.0)) throw ContractError("OGD step must be positive");
  return Project(x - step * g, set);
}

Ogd::Ogd(const FeasibleSet& set, double gradient_bound, double step_scale)
    : set_(set), x_(Project(Point::Zero(set.dim()), set)) {
  if (!(gradient_bound > 0.0)) throw ConfigError("OGD needs G > 0");
  if (!(step_scale > 0.0)) throw ConfigError("OGD needs step_scale > 0");
  base_step_ = step_scale * set_.Diameter() / gradient_bound;
}

double Ogd::step() const { return base_step_ / std::sqrt(static_cast<double>(t_)); }

Point Ogd::Predict() {
  if (awaiting_observe_) throw ProtocolError("OGD: predict called twice");
  awaiting_observe_ = true;
  return x_;
}

void Ogd::Observe(const Point& g) {
  if (!awaiting_observe_) throw ProtocolError("OGD: observe without predict");
  awaiting_observe_ = false;
  x_ = OgdStep(x_, g, step(), set_);
  ++t_;
}

Point Learner::Predict() {
  return std::visit([](auto& l) { return l.Predict(); }, v_);
}

void Learner::Observe(const Point& g) {
  std::visit([&](auto& l) { l.Observe(g); }, v_);
}

double Learner::CurrentStep() const {
  if (const auto* o = std::get_if<Oftrl>(&v_)) return o->eta();
  if (const auto* o = std::get_if<Ogd>(&v_)) return o->step();
  return 0.0;
}

std::string Learner::name() const {
  switch (v_.index()) {
    case 0:
      return "oftrl";
    case 1:
      return "oftl";
    default:
      return "ogd";
  }
}

}  // namespace sea
