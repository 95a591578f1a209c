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

#ifndef SEA_HARNESS_H_
#define SEA_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sea/config.h"
#include "sea/environments.h"
#include "sea/learners.h"
#include "sea/metrics.h"
#include "sea/trace.h"

namespace sea {

// Which regret a run reports as its headline number.
enum class RegretKind {
  // sum_t <g_t, x_t - u*>, u* minimizing sum_t <g_t, u> in hindsight.
  kLinearHindsight,
  // sum_t f(x_t, xi_t) - f(u, xi_t), u minimizing the summed mean losses.
  kValueMean,
};

// Environment for one trial. Horizon-dependent defaults (ROM pool size,
// script length) are resolved against `horizon`; trial randomness used at
// construction comes from `trial_key`.
Environment BuildEnvironment(const ExperimentConfig& cfg, int horizon,
                             std::uint64_t trial_key);

// Resolved learner parameters for an environment: nu (OFTRL), mu (OFTL).
struct LearnerParams {
  std::string preset;
  double nu = 0.0;
  double mu = 0.0;
  double step_scale = 1.0;
  RegularizerScale scale = RegularizerScale::kUnit;
};

LearnerParams ResolveLearner(const ExperimentConfig& cfg, const Environment& env);
Learner BuildLearner(const LearnerParams& params, const Environment& env);
RegretKind ResolveRegretKind(const ExperimentConfig& cfg);

// Plays T rounds in protocol order: the learner predicts x_t, the
// environment picks D_t (seeing x_t and the history) and samples xi_t, the
// learner observes g_t = grad f(x_t, xi_t). Deterministic in (cfg, T, seed).
// Throws ConfigError for learner/environment mismatches before any round.
Trace RunTrial(const ExperimentConfig& cfg, int horizon, std::uint64_t seed);
// The same loop for a caller-built environment and learner; round streams
// are keyed by (seed, horizon) as in RunTrial.
Trace PlayTrial(Environment& env, Learner& learner, int horizon, std::uint64_t seed);

struct TrialSummary {
  int horizon = 0;
  std::uint64_t seed = 0;
  double regret_final = 0.0;
  double linear_regret = 0.0;
  double value_regret = 0.0;
  CumAggregates aggregates;
  double eta_final = 0.0;
  double bound_thm1 = 0.0;
  double bound_thm3 = 0.0;
  // Per-round sigma_t^2 and Sigma_t^2, for the seed-averaged maxima.
  std::vector<double> sigma_sq;
  std::vector<double> variation_sq;
};

TrialSummary SummarizeTrial(const ExperimentConfig& cfg, const Trace& trace,
                            int horizon, std::uint64_t seed);

struct HorizonAggregate {
  int horizon = 0;
  int trials = 0;
  double mean_regret = 0.0;
  // Standard error of the mean; 0 with `single_seed` set for one trial.
  double stderr_regret = 0.0;
  bool single_seed = false;
  // sqrt(E[sum sigma_t^2] / T) and sqrt(E[sum Sigma_t^2] / T).
  double sigma_bar = 0.0;
  double variation_bar = 0.0;
  // max_t E[sigma_t^2] and max_t E[Sigma_t^2], square-rooted.
  double sigma_max = 0.0;
  double variation_max = 0.0;
  double mean_eta_final = 0.0;
  double bound_thm1 = 0.0;
  double bound_thm3 = 0.0;
  std::optional<bool> thm1_dominates;
  std::optional<bool> thm3_dominates;
};

struct Aggregate {
  std::string env;
  std::string learner;
  RegretKind regret_kind = RegretKind::kLinearHindsight;
  EnvConstants constants;
  LearnerParams learner_params;
  std::vector<TrialSummary> trials;  // ordered by (T, seed)
  std::vector<HorizonAggregate> horizons;
  std::optional<double> slope;
};

// Raised when a trial fails; identifies the offending trial.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::string env, std::string learner, int horizon, std::uint64_t seed,
             const std::string& what);
  const std::string& env() const { return env_; }
  const std::string& learner() const { return learner_; }
  int horizon() const { return horizon_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::string env_;
  std::string learner_;
  int horizon_;
  std::uint64_t seed_;
};

std::vector<int> ResolveHorizons(const ExperimentConfig& cfg);
std::vector<std::uint64_t> ResolveSeeds(const ExperimentConfig& cfg);

// Runs every (T, seed) pair, possibly on several threads, and reduces in
// (T, seed) order. Writes CSV and summary JSON when run.out is set.
Aggregate RunExperiment(const ExperimentConfig& cfg);

struct SampleMean {
  double mean = 0.0;
  // Sample standard deviation / sqrt(n); 0 when n = 1.
  double stderr_mean = 0.0;
  bool single = false;
};
SampleMean MeanWithStdErr(std::span<const double> values);

// Least-squares slope of log(values) on log(horizons). Needs >= 3 points;
// throws DomainError on nonpositive entries.
double FitLogLogSlope(std::span<const double> horizons, std::span<const double> values);

void WriteCsv(const Aggregate& agg, std::ostream& out);
std::string SummaryJson(const ExperimentConfig& cfg, const Aggregate& agg);
// Writes <out>/<env>_<learner>.csv and <out>/<env>_<learner>.json.
void WriteOutputs(const ExperimentConfig& cfg, const Aggregate& agg,
                  const std::filesystem::path& out_dir);

}  // namespace sea

#endif  // SEA_HARNESS_H_
