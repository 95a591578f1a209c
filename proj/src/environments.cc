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
#include <limits>
#include <numbers>
#include <string>

#include "sea/errors.h"

namespace sea {

const char* ToString(VariationConvention c) {
  switch (c) {
    case VariationConvention::kRepeatFirst:
      return "repeat_first";
    case VariationConvention::kZeroBefore:
      return "zero_before";
  }
  return "unknown";
}

// -- AdversarialScript --------------------------------------------------------

AdversarialScript::AdversarialScript(std::vector<LossSpec> losses)
    : losses_(std::move(losses)) {
  if (losses_.empty()) throw ConfigError("adversarial script is empty");
  for (const LossSpec& l : losses_) {
    if (l.dim() != losses_.front().dim()) {
      throw ConfigError("adversarial script mixes dimensions");
    }
  }
}

StepResult AdversarialScript::Step(const RoundContext& ctx) {
  if (ctx.t > static_cast<int>(losses_.size())) {
    throw ProtocolError("adversarial script exhausted at round " +
                        std::to_string(ctx.t));
  }
  const LossSpec& loss = losses_[ctx.t - 1];
  const double variation =
      ctx.t == 1 ? 0.0 : LossVariation(loss, losses_[ctx.t - 2], ctx.set);
  return {DistributionSpec::MakeDirac(loss), loss, loss, 0.0, variation};
}

double AdversarialScript::GradientBound(const FeasibleSet& set) const {
  double g = 0.0;
  for (const LossSpec& l : losses_) g = std::max(g, sea::GradNormBound(l, set));
  return g;
}

// -- Iid ----------------------------------------------------------------------

Iid::Iid(DistributionSpec dist, const FeasibleSet& set)
    : dist_(std::move(dist)),
      mean_(MeanLoss(dist_)),
      sigma_sq_(VarianceBound(dist_, set)) {}

StepResult Iid::Step(const RoundContext& ctx) {
  return {dist_, Sample(dist_, ctx.rng), mean_, sigma_sq_, 0.0};
}

std::vector<LossSpec> Iid::MeanLosses() const { return {mean_}; }

double Iid::GradientBound(const FeasibleSet& set) const {
  return sea::GradNormBound(dist_, set);
}

// -- CorruptedIid -------------------------------------------------------------

CorruptedIid::CorruptedIid(DistributionSpec base, std::vector<Point> corruptions,
                           double budget, const FeasibleSet& set)
    : base_(std::move(base)),
      base_mean_(MeanLoss(base_)),
      corruptions_(std::move(corruptions)),
      budget_(budget),
      sigma_sq_(VarianceBound(base_, set)) {
  if (!(budget_ >= 0.0)) throw ConfigError("corruption budget must be >= 0");
  double spent = 0.0;
  for (const Point& c : corruptions_) {
    if (c.size() != base_.dim()) {
      throw ConfigError("corruption dimension does not match the base");
    }
    // For a linear corruption max_x ||grad c_t(x)|| = ||c_t||.
    spent += c.norm();
  }
  if (spent > budget_ * (1.0 + 1e-12)) {
    throw ConfigError("corruptions spend " + std::to_string(spent) +
                      " which exceeds the budget C = " + std::to_string(budget_));
  }
}

Point CorruptedIid::CorruptionAt(int t) const {
  if (t >= 1 && t <= static_cast<int>(corruptions_.size())) {
    return corruptions_[t - 1];
  }
  return Point::Zero(base_.dim());
}

StepResult CorruptedIid::Step(const RoundContext& ctx) {
  const Point c = CorruptionAt(ctx.t);
  const double variation = (c - CorruptionAt(ctx.t - 1)).squaredNorm();
  DistributionSpec dist = DistributionSpec::MakeShifted(base_, c);
  LossSpec sample = AddLinear(Sample(base_, ctx.rng), c);
  return {std::move(dist), std::move(sample), AddLinear(base_mean_, c), sigma_sq_,
          variation};
}

std::vector<LossSpec> CorruptedIid::MeanLosses() const { return {base_mean_}; }

double CorruptedIid::GradientBound(const FeasibleSet& set) const {
  double c_max = 0.0;
  for (const Point& c : corruptions_) c_max = std::max(c_max, c.norm());
  return sea::GradNormBound(base_, set) + c_max;
}

std::vector<Point> MakeCorruptionSchedule(double budget, double gamma,
                                          const Point& direction) {
  if (!(budget >= 0.0)) throw ConfigError("corruption budget must be >= 0");
  if (!(gamma > 0.0)) throw ConfigError("corruption gamma must be > 0");
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw ConfigError("corruption direction must be nonzero");
  const Point unit = direction / norm;
  std::vector<Point> schedule;
  if (budget == 0.0) return schedule;
  const auto rounds = static_cast<long>(std::ceil(budget / gamma - 1e-12));
  schedule.reserve(rounds);
  for (long k = 0; k < rounds; ++k) {
    const double magnitude =
        k + 1 < rounds ? gamma : budget - gamma * static_cast<double>(rounds - 1);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    schedule.push_back(sign * magnitude * unit);
  }
  return schedule;
}

// -- Random order models ------------------------------------------------------

namespace internal {

RandomOrderCore::RandomOrderCore(std::vector<LossSpec> pool, int passes)
    : pool_(std::make_shared<const std::vector<LossSpec>>(std::move(pool))),
      passes_(passes) {
  if (pool_->empty()) throw ConfigError("random order pool is empty");
  if (passes_ < 1) throw ConfigError("random order model needs passes >= 1");
  for (const LossSpec& l : *pool_) {
    if (l.dim() != pool_->front().dim() || !SameCurvature(l, pool_->front())) {
      throw ConfigError("random order pool members must share dimension and curvature");
    }
  }
  Refill();
}

void RandomOrderCore::Refill() {
  ++pass_;
  remaining_.resize(pool_->size());
  sum_ = Point::Zero(pool_->front().dim());
  sum_sq_ = 0.0;
  for (std::size_t i = 0; i < pool_->size(); ++i) {
    remaining_[i] = i;
    const Point& b = (*pool_)[i].linear_term();
    sum_ += b;
    sum_sq_ += b.squaredNorm();
  }
}

StepResult RandomOrderCore::Step(const RoundContext& ctx) {
  if (remaining_.empty()) {
    if (pass_ >= passes_) {
      throw ProtocolError("random order pool exhausted at round " +
                          std::to_string(ctx.t) + " after " +
                          std::to_string(passes_) + " pass(es)");
    }
    Refill();
  }
  const double m = static_cast<double>(remaining_.size());
  const Point mean = sum_ / m;
  // Members share curvature, so the variance is the spread of the linear
  // terms and the variation is the squared shift of their mean.
  const double sigma_sq = std::max(0.0, sum_sq_ / m - mean.squaredNorm());
  const double variation =
      prev_mean_ ? (mean - *prev_mean_).squaredNorm() : 0.0;
  prev_mean_ = mean;

  DistributionSpec dist = DistributionSpec::MakeFiniteUniform(pool_, remaining_);
  const std::size_t j = ctx.rng.Below(remaining_.size());
  const std::size_t idx = remaining_[j];
  remaining_[j] = remaining_.back();
  remaining_.pop_back();
  const LossSpec& drawn = (*pool_)[idx];
  sum_ -= drawn.linear_term();
  sum_sq_ -= drawn.linear_term().squaredNorm();
  LossSpec mean_loss = AddLinear(drawn, mean - drawn.linear_term());
  return {std::move(dist), drawn, std::move(mean_loss), sigma_sq, variation};
}

double RandomOrderCore::GradientBound(const FeasibleSet& set) const {
  double g = 0.0;
  for (const LossSpec& l : *pool_) g = std::max(g, sea::GradNormBound(l, set));
  return g;
}

}  // namespace internal

// -- Shift --------------------------------------------------------------------

Shift::Shift(LossSpec base, Point center, double radius, double epsilon,
             double sigma)
    : base_(std::move(base)),
      center_(std::move(center)),
      radius_(radius),
      epsilon_(epsilon),
      sigma_(sigma) {
  if (base_.dim() < 2) throw ConfigError("shift environment needs dim >= 2");
  if (center_.size() != base_.dim()) throw ConfigError("shift center dimension");
  if (!(radius_ > 0.0)) throw ConfigError("shift drift radius must be > 0");
  if (!(epsilon_ >= 0.0)) throw ConfigError("shift epsilon must be >= 0");
  if (!(sigma_ >= 0.0)) throw ConfigError("shift sigma must be >= 0");
  const double half_chord = std::sqrt(epsilon_) / (2.0 * radius_);
  // Shrink the angle by a relative 1e-9 so the realized chord never exceeds
  // sqrt(epsilon) after rounding.
  angle_step_ = half_chord >= 1.0 ? std::numbers::pi
                                  : 2.0 * std::asin(half_chord) * (1.0 - 1e-9);
}

Point Shift::MeanAt(int t) const {
  Point m = center_;
  const double angle = angle_step_ * static_cast<double>(t - 1);
  m[0] += radius_ * std::cos(angle);
  m[1] += radius_ * std::sin(angle);
  return m;
}

StepResult Shift::Step(const RoundContext& ctx) {
  const Point mean = MeanAt(ctx.t);
  const double variation = prev_ ? (mean - *prev_).squaredNorm() : 0.0;
  prev_ = mean;
  LossSpec mean_loss = AddLinear(base_, mean);
  DistributionSpec dist = DistributionSpec::MakeSphereNoise(mean_loss, sigma_);
  LossSpec sample = Sample(dist, ctx.rng);
  return {std::move(dist), std::move(sample), std::move(mean_loss), sigma_ * sigma_,
          variation};
}

double Shift::GradientBound(const FeasibleSet& set) const {
  return sea::GradNormBound(base_, set) + center_.norm() + radius_ + sigma_;
}

// -- Switch -------------------------------------------------------------------

Switch::Switch(std::vector<DistributionSpec> dists, std::vector<int> switch_rounds,
               const FeasibleSet& set)
    : dists_(std::move(dists)), switch_rounds_(std::move(switch_rounds)) {
  if (dists_.size() < 2) throw ConfigError("switch environment needs >= 2 distributions");
  for (std::size_t i = 0; i < switch_rounds_.size(); ++i) {
    if (switch_rounds_[i] < 2 || (i > 0 && switch_rounds_[i] <= switch_rounds_[i - 1])) {
      throw ConfigError("switch rounds must be strictly increasing and >= 2");
    }
  }
  const std::size_t n = dists_.size();
  for (const DistributionSpec& d : dists_) {
    sigma_sq_.push_back(VarianceBound(d, set));
    means_.push_back(MeanLoss(d));
  }
  variation_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    variation_[k] = Variation(dists_[k], dists_[(k + n - 1) % n], set);
  }
  // Every switch that actually happens must move the mean.
  const std::size_t used = std::min(switch_rounds_.size(), n);
  for (std::size_t k = 1; k <= used; ++k) {
    if (!(variation_[k % n] > 0.0)) {
      throw ConfigError("consecutive switch distributions have identical means");
    }
  }
}

int Switch::IndexAt(int t) const {
  const auto passed = std::upper_bound(switch_rounds_.begin(), switch_rounds_.end(), t) -
                      switch_rounds_.begin();
  return static_cast<int>(passed % static_cast<long>(dists_.size()));
}

StepResult Switch::Step(const RoundContext& ctx) {
  const int k = IndexAt(ctx.t);
  const bool switched = ctx.t > 1 && k != IndexAt(ctx.t - 1);
  const DistributionSpec& dist = dists_[k];
  return {dist, Sample(dist, ctx.rng), means_[k], sigma_sq_[k],
          switched ? variation_[k] : 0.0};
}

std::vector<LossSpec> Switch::MeanLosses() const { return means_; }

double Switch::GradientBound(const FeasibleSet& set) const {
  double g = 0.0;
  for (const DistributionSpec& d : dists_) g = std::max(g, sea::GradNormBound(d, set));
  return g;
}

// -- RademacherLb -------------------------------------------------------------

double RademacherLbGradient(double a, double b, double g_scale, int t,
                            const Point& x, int sign) {
  if (x.size() != 1) throw ContractError("Rademacher adversary is one-dimensional");
  const double tol = 1e-12 * std::max(1.0, b);
  if (x[0] < a - tol || x[0] > b + tol) {
    throw ContractError("Rademacher adversary requires x_t in [a, b]");
  }
  if (t % 2 == 0) return 0.0;
  // c(x) = G x^2 / (4b), so c'(x) = G x / (2b).
  return static_cast<double>(sign) * g_scale * x[0] / (2.0 * b);
}

RademacherLb::RademacherLb(double a, double b, double g_scale)
    : a_(a), b_(b), g_scale_(g_scale) {
  if (!(a_ >= 1.0 && a_ < b_)) throw ConfigError("Rademacher adversary needs 1 <= a < b");
  if (!(a_ >= 0.5 * b_)) throw ConfigError("Rademacher adversary needs a >= b/2");
  if (!(g_scale_ > 0.0)) throw ConfigError("Rademacher adversary needs G > 0");
}

LossSpec RademacherLb::LossAt(int t, const Point& x, CounterRng& rng) const {
  const int sign = (t % 2 == 1) ? rng.Sign() : 1;
  Point g(1);
  g[0] = RademacherLbGradient(a_, b_, g_scale_, t, x, sign);
  return LossSpec::Linear(std::move(g));
}

StepResult RademacherLb::Step(const RoundContext& ctx) {
  LossSpec loss = LossAt(ctx.t, ctx.x, ctx.rng);
  const double z = loss.linear_term()[0];
  const double variation = ctx.t == 1 ? 0.0 : (z - prev_) * (z - prev_);
  prev_ = z;
  return {DistributionSpec::MakeDirac(loss), loss, loss, 0.0, variation};
}

std::vector<LossSpec> RademacherLb::MeanLosses() const {
  return {LossSpec::Linear(Point::Zero(1))};
}

// -- CoordinateQuadratic ------------------------------------------------------

namespace {

std::vector<LossSpec> CoordinatePool(int dim) {
  if (dim < 1) throw ConfigError("coordinate quadratic needs dim >= 1");
  std::vector<LossSpec> pool;
  for (int i = 0; i < dim; ++i) {
    Matrix a = Matrix::Zero(dim, dim);
    a(i, i) = 1.0;
    pool.push_back(LossSpec::Quadratic(std::move(a), Point::Zero(dim)));
  }
  return pool;
}

std::vector<std::size_t> AllIndices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

CoordinateQuadratic::CoordinateQuadratic(int dim, const FeasibleSet& set)
    : pool_(std::make_shared<const std::vector<LossSpec>>(CoordinatePool(dim))),
      dist_(DistributionSpec::MakeFiniteUniform(pool_, AllIndices(pool_->size()))),
      mean_(MeanLoss(dist_)),
      sigma_sq_(VarianceBound(dist_, set)) {
  if (set.dim() != dim) throw ConfigError("coordinate quadratic: set dimension");
}

StepResult CoordinateQuadratic::Step(const RoundContext& ctx) {
  return {dist_, Sample(dist_, ctx.rng), mean_, sigma_sq_, 0.0};
}

// -- Environment --------------------------------------------------------------

Environment::Environment(std::string name, FeasibleSet set, State state)
    : name_(std::move(name)), set_(std::move(set)), state_(std::move(state)) {
  constants_.diameter = set_.Diameter();
  std::visit(
      [&](const auto& s) {
        constants_.gradient_bound = s.GradientBound(set_);
        double l_max = 0.0;
        double mu_min = std::numeric_limits<double>::infinity();
        for (const LossSpec& loss : s.MeanLosses()) {
          if (loss.dim() != set_.dim()) {
            throw ConfigError("environment '" + name_ +
                              "' does not match the feasible set dimension");
          }
          const Matrix a = loss.CurvatureOrZero();
          l_max = std::max(l_max, LargestEigenvalue(a));
          mu_min = std::min(mu_min, SmallestEigenvalue(a));
        }
        constants_.smoothness = l_max;
        constants_.strong_convexity = std::isfinite(mu_min) ? mu_min : 0.0;
      },
      state_);
}

StepResult Environment::Step(int t, const Point& x,
                             std::span<const RoundRecord> history,
                             CounterRng& rng) {
  if (t != last_t_ + 1) {
    throw ProtocolError("environment '" + name_ + "' expected round " +
                        std::to_string(last_t_ + 1) + ", got " + std::to_string(t));
  }
  if (history.size() != static_cast<std::size_t>(t - 1)) {
    throw ProtocolError("environment history must hold t - 1 rounds");
  }
  if (const auto cap = capacity(); cap && t > *cap) {
    throw ProtocolError("environment '" + name_ + "' supports at most " +
                        std::to_string(*cap) + " rounds");
  }
  RoundContext ctx{t, x, history, set_, rng};
  StepResult result = std::visit([&](auto& s) { return s.Step(ctx); }, state_);
  last_t_ = t;
  return result;
}

VariationConvention Environment::convention() const {
  return std::holds_alternative<CorruptedIid>(state_)
             ? VariationConvention::kZeroBefore
             : VariationConvention::kRepeatFirst;
}

std::optional<int> Environment::capacity() const {
  return std::visit([](const auto& s) { return s.capacity(); }, state_);
}

}  // namespace sea
