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

#ifndef SEA_ENVIRONMENTS_H_
#define SEA_ENVIRONMENTS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sea/geometry.h"
#include "sea/losses.h"
#include "sea/rng.h"
#include "sea/trace.h"

namespace sea {

// What an environment emits for round t.
struct StepResult {
  DistributionSpec dist;
  LossSpec sample;
  // MeanLoss(dist), supplied by the environment so that pooled models do
  // not pay O(n) per round for it.
  LossSpec mean;
  // sigma_t^2 of dist.
  double sigma_sq;
  // Sigma_t^2 = sup_x ||grad F^t(x) - grad F^{t-1}(x)||^2.
  double variation_sq;
};

// Everything an adaptive environment may look at when choosing D_t: the
// current iterate x_t, the past rounds, and the round's random stream.
struct RoundContext {
  int t;
  const Point& x;
  std::span<const RoundRecord> history;
  const FeasibleSet& set;
  CounterRng& rng;
};

// Each state class exposes Step(), capacity() (maximum number of rounds,
// nullopt when unbounded), MeanLosses() (the mean losses F^t it can select,
// used for the smoothness and strong-convexity constants) and
// GradientBound().

// Fixed list of losses; D_t is the Dirac mass on losses[t-1].
class AdversarialScript {
 public:
  explicit AdversarialScript(std::vector<LossSpec> losses);
  StepResult Step(const RoundContext& ctx);
  std::optional<int> capacity() const { return static_cast<int>(losses_.size()); }
  std::vector<LossSpec> MeanLosses() const { return losses_; }
  double GradientBound(const FeasibleSet& set) const;

 private:
  std::vector<LossSpec> losses_;
};

class Iid {
 public:
  Iid(DistributionSpec dist, const FeasibleSet& set);
  StepResult Step(const RoundContext& ctx);
  std::optional<int> capacity() const { return std::nullopt; }
  std::vector<LossSpec> MeanLosses() const;
  double GradientBound(const FeasibleSet& set) const;

 private:
  DistributionSpec dist_;
  LossSpec mean_;
  double sigma_sq_;
};

// D_t = base shifted by the linear corruption c_t (c_t = 0 past the end of
// the schedule). Construction enforces sum_t ||c_t|| <= budget.
class CorruptedIid {
 public:
  CorruptedIid(DistributionSpec base, std::vector<Point> corruptions,
               double budget, const FeasibleSet& set);
  StepResult Step(const RoundContext& ctx);
  std::optional<int> capacity() const { return std::nullopt; }
  std::vector<LossSpec> MeanLosses() const;
  double GradientBound(const FeasibleSet& set) const;
  double budget() const { return budget_; }
  const std::vector<Point>& corruptions() const { return corruptions_; }

 private:
  Point CorruptionAt(int t) const;

  DistributionSpec base_;
  LossSpec base_mean_;
  std::vector<Point> corruptions_;
  double budget_;
  double sigma_sq_;
};

// Per-round `budget / gamma` rounded up corruptions of norm gamma (the last
// one takes the remainder), alternating in sign along `direction`.
std::vector<Point> MakeCorruptionSchedule(double budget, double gamma,
                                          const Point& direction);

namespace internal {

// Sampling without replacement from a pool whose members share curvature,
// with optional reshuffled passes. Keeps running sums so that sigma_t^2 and
// Sigma_t^2 cost O(d) per round.
class RandomOrderCore {
 public:
  RandomOrderCore(std::vector<LossSpec> pool, int passes);
  StepResult Step(const RoundContext& ctx);
  int pool_size() const { return static_cast<int>(pool_->size()); }
  int passes() const { return passes_; }
  int current_pass() const { return pass_; }
  const std::vector<std::size_t>& remaining() const { return remaining_; }
  const std::vector<LossSpec>& pool() const { return *pool_; }
  double GradientBound(const FeasibleSet& set) const;

 private:
  void Refill();

  std::shared_ptr<const std::vector<LossSpec>> pool_;
  int passes_;
  int pass_ = 0;
  std::vector<std::size_t> remaining_;
  Point sum_;
  double sum_sq_ = 0.0;
  std::optional<Point> prev_mean_;
};

}  // namespace internal

// Single-pass random order model: D_t is uniform over the losses not drawn
// yet.
class Rom {
 public:
  explicit Rom(std::vector<LossSpec> pool) : core_(std::move(pool), 1) {}
  StepResult Step(const RoundContext& ctx) { return core_.Step(ctx); }
  std::optional<int> capacity() const { return core_.pool_size(); }
  std::vector<LossSpec> MeanLosses() const { return core_.pool(); }
  double GradientBound(const FeasibleSet& set) const { return core_.GradientBound(set); }
  const std::vector<std::size_t>& remaining() const { return core_.remaining(); }

 private:
  internal::RandomOrderCore core_;
};

// P passes over the pool, reshuffled between passes.
class MultiPassRom {
 public:
  MultiPassRom(std::vector<LossSpec> pool, int passes) : core_(std::move(pool), passes) {}
  StepResult Step(const RoundContext& ctx) { return core_.Step(ctx); }
  std::optional<int> capacity() const { return core_.pool_size() * core_.passes(); }
  std::vector<LossSpec> MeanLosses() const { return core_.pool(); }
  double GradientBound(const FeasibleSet& set) const { return core_.GradientBound(set); }
  int pool_size() const { return core_.pool_size(); }
  int current_pass() const { return core_.current_pass(); }

 private:
  internal::RandomOrderCore core_;
};

// Slowly drifting mean: sphere noise around base + <m_t, x>, where m_t
// rotates on a circle (first two coordinates) with chord ||m_t - m_{t-1}||
// at most sqrt(epsilon).
class Shift {
 public:
  Shift(LossSpec base, Point center, double radius, double epsilon, double sigma);
  StepResult Step(const RoundContext& ctx);
  std::optional<int> capacity() const { return std::nullopt; }
  std::vector<LossSpec> MeanLosses() const { return {base_}; }
  double GradientBound(const FeasibleSet& set) const;
  Point MeanAt(int t) const;
  double epsilon() const { return epsilon_; }

 private:
  LossSpec base_;
  Point center_;
  double radius_;
  double epsilon_;
  double sigma_;
  double angle_step_;
  std::optional<Point> prev_;
};

// Cycles through `dists`, moving to the next one at each scripted round.
class Switch {
 public:
  Switch(std::vector<DistributionSpec> dists, std::vector<int> switch_rounds,
         const FeasibleSet& set);
  StepResult Step(const RoundContext& ctx);
  std::optional<int> capacity() const { return std::nullopt; }
  std::vector<LossSpec> MeanLosses() const;
  double GradientBound(const FeasibleSet& set) const;
  int IndexAt(int t) const;

 private:
  std::vector<DistributionSpec> dists_;
  std::vector<int> switch_rounds_;
  std::vector<double> sigma_sq_;
  std::vector<LossSpec> means_;
  // variation_[k] = Variation(dists[k], dists[k-1 mod n]).
  std::vector<double> variation_;
};

// Gradient of the lower-bound adversary at round t: 0 for even t, and
// sign * G x / (2b) for odd t. Throws ContractError unless x lies in [a, b].
double RademacherLbGradient(double a, double b, double g_scale, int t,
                            const Point& x, int sign);

// Adaptive Rademacher adversary on X = [a, b] with 1 <= a < b, a >= b/2.
// Losses are linear; D_t is the Dirac mass on the realized loss.
class RademacherLb {
 public:
  RademacherLb(double a, double b, double g_scale);
  StepResult Step(const RoundContext& ctx);
  // Single round as a function of the iterate. Draws the sign from `rng`
  // when t is odd.
  LossSpec LossAt(int t, const Point& x, CounterRng& rng) const;
  std::optional<int> capacity() const { return std::nullopt; }
  std::vector<LossSpec> MeanLosses() const;
  double GradientBound(const FeasibleSet&) const { return 0.5 * g_scale_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double g_scale() const { return g_scale_; }

 private:
  double a_;
  double b_;
  double g_scale_;
  double prev_ = 0.0;
};

// f(x, i) = x_i^2 / 2 with i uniform on [d].
class CoordinateQuadratic {
 public:
  CoordinateQuadratic(int dim, const FeasibleSet& set);
  StepResult Step(const RoundContext& ctx);
  std::optional<int> capacity() const { return std::nullopt; }
  std::vector<LossSpec> MeanLosses() const { return {mean_}; }
  double GradientBound(const FeasibleSet& set) const { return set.MaxNorm(); }
  double sigma_sq() const { return sigma_sq_; }

 private:
  std::shared_ptr<const std::vector<LossSpec>> pool_;
  DistributionSpec dist_;
  LossSpec mean_;
  double sigma_sq_;
};

struct EnvConstants {
  double diameter = 0.0;
  // G: almost-sure bound on gradient norms.
  double gradient_bound = 0.0;
  // L: largest curvature eigenvalue among the supported losses.
  double smoothness = 0.0;
  // mu: smallest curvature eigenvalue among the supported losses.
  double strong_convexity = 0.0;
};

// A stochastically extended adversary: one state variant plus the feasible
// set it plays on. Enforces the round sequence t = 1, 2, ... with a history
// of length t - 1.
class Environment {
 public:
  using State = std::variant<AdversarialScript, Iid, CorruptedIid, Rom,
                             MultiPassRom, Shift, Switch, RademacherLb,
                             CoordinateQuadratic>;

  Environment(std::string name, FeasibleSet set, State state);

  StepResult Step(int t, const Point& x, std::span<const RoundRecord> history,
                  CounterRng& rng);

  const std::string& name() const { return name_; }
  const FeasibleSet& set() const { return set_; }
  const EnvConstants& constants() const { return constants_; }
  VariationConvention convention() const;
  std::optional<int> capacity() const;
  const State& state() const { return state_; }
  // Replaces the computed gradient bound G (e.g. with a configured value).
  void set_gradient_bound(double g) { constants_.gradient_bound = g; }

 private:
  std::string name_;
  FeasibleSet set_;
  State state_;
  EnvConstants constants_;
  int last_t_ = 0;
};

}  // namespace sea

#endif  // SEA_ENVIRONMENTS_H_
