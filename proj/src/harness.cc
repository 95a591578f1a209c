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

#include "sea/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "sea/errors.h"

namespace sea {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FeasibleSet BuildSet(const ExperimentConfig& cfg, int dim) {
  const std::string domain = cfg.GetString("env.domain", "ball");
  if (domain == "ball") {
    const Point center = cfg.GetPoint("env.center", Point::Zero(dim));
    if (center.size() != dim) throw ConfigError("env.center has the wrong dimension");
    return FeasibleSet::MakeBall(center, cfg.GetDouble("env.radius", 1.0));
  }
  if (domain == "box") {
    const double r = cfg.GetDouble("env.radius", 1.0);
    const Point lo = cfg.GetPoint("env.lo", Point::Constant(dim, -r));
    const Point hi = cfg.GetPoint("env.hi", Point::Constant(dim, r));
    if (lo.size() != dim || hi.size() != dim) {
      throw ConfigError("env.lo / env.hi have the wrong dimension");
    }
    return FeasibleSet::MakeBox(lo, hi);
  }
  throw ConfigError("env.domain must be 'ball' or 'box', got '" + domain + "'");
}

// Curvature of the quadratic family: a scalar (times I) or a diagonal.
Matrix FamilyCurvature(const ExperimentConfig& cfg, int dim) {
  const Point diag = cfg.GetPoint("env.curvature", Point::Ones(1));
  if (diag.size() == 1) return diag[0] * Matrix::Identity(dim, dim);
  if (diag.size() != dim) throw ConfigError("env.curvature has the wrong dimension");
  if ((diag.array() < 0.0).any()) throw ConfigError("env.curvature must be >= 0");
  return diag.asDiagonal();
}

LossSpec FamilyLoss(const ExperimentConfig& cfg, int dim, const Point& linear) {
  const std::string family = cfg.GetString("env.family", "linear");
  if (linear.size() != dim) throw ConfigError("linear term has the wrong dimension");
  if (family == "linear") return LossSpec::Linear(linear);
  if (family == "quadratic") return LossSpec::Quadratic(FamilyCurvature(cfg, dim), linear);
  throw ConfigError("env.family must be 'linear' or 'quadratic', got '" + family + "'");
}

Point UnitDirection(const ExperimentConfig& cfg, int dim) {
  Point e = Point::Zero(dim);
  e[0] = 1.0;
  Point dir = cfg.GetPoint("env.direction", e);
  if (dir.size() != dim) throw ConfigError("env.direction has the wrong dimension");
  if (!(dir.norm() > 0.0)) throw ConfigError("env.direction must be nonzero");
  return dir / dir.norm();
}

double NonNegative(const ExperimentConfig& cfg, const std::string& key, double fallback) {
  const double v = cfg.GetDouble(key, fallback);
  if (!(v >= 0.0)) throw ConfigError(key + " must be >= 0");
  return v;
}

std::vector<LossSpec> AdversarialLosses(const ExperimentConfig& cfg, int dim,
                                        int horizon, std::uint64_t trial_key) {
  const std::string pattern = cfg.GetString("env.pattern", "alternating");
  const double scale = cfg.GetDouble("env.scale", 1.0);
  const Point dir = UnitDirection(cfg, dim);
  const long block = cfg.GetInt("env.block", 1);
  if (block < 1) throw ConfigError("env.block must be >= 1");
  CounterRng rng(Mix64(trial_key ^ 0xad5e25a1ULL));
  std::vector<LossSpec> losses;
  const int n = std::max(horizon, 1);
  losses.reserve(n);
  for (int t = 1; t <= n; ++t) {
    double sign;
    if (pattern == "alternating") {
      sign = (t % 2 == 1) ? 1.0 : -1.0;
    } else if (pattern == "blocks") {
      sign = (((t - 1) / block) % 2 == 0) ? 1.0 : -1.0;
    } else if (pattern == "random") {
      sign = static_cast<double>(rng.Sign());
    } else {
      throw ConfigError("env.pattern must be alternating, blocks or random");
    }
    losses.push_back(FamilyLoss(cfg, dim, sign * scale * dir));
  }
  return losses;
}

// Pool members f_i = family loss with linear term mean + sigma u_i.
std::vector<LossSpec> RomPool(const ExperimentConfig& cfg, int dim, long size,
                              std::uint64_t trial_key) {
  if (size < 1) throw ConfigError("env.pool_size must be >= 1");
  const Point mean = cfg.GetPoint("env.mean", Point::Zero(dim));
  const double sigma = NonNegative(cfg, "env.sigma", 1.0);
  const std::uint64_t key =
      cfg.Has("env.pool_seed")
          ? Mix64(static_cast<std::uint64_t>(cfg.GetInt("env.pool_seed", 0)))
          : Mix64(trial_key ^ 0x9001ULL);
  CounterRng rng(key);
  std::vector<LossSpec> pool;
  pool.reserve(size);
  for (long i = 0; i < size; ++i) {
    pool.push_back(FamilyLoss(cfg, dim, mean + sigma * SampleUnitSphere(dim, rng)));
  }
  return pool;
}

template <typename T>
T LongTo(long v, const std::string& what) {
  if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max()) {
    throw ConfigError(what + " is out of range");
  }
  return static_cast<T>(v);
}

}  // namespace

Environment BuildEnvironment(const ExperimentConfig& cfg, int horizon,
                             std::uint64_t trial_key) {
  const std::string preset = cfg.GetString("env.preset", "");
  if (preset.empty()) throw ConfigError("env.preset is required");

  if (preset == "lb_rademacher") {
    const double a = cfg.GetDouble("env.a", 1.0);
    const double b = cfg.GetDouble("env.b", 2.0);
    RademacherLb state(a, b, cfg.GetDouble("env.scale", 1.0));
    Environment env(preset, FeasibleSet::MakeBox(Point::Constant(1, a), Point::Constant(1, b)),
                    std::move(state));
    if (cfg.Has("env.gradient_bound")) {
      env.set_gradient_bound(cfg.GetDouble("env.gradient_bound", 0.0));
    }
    return env;
  }

  const int default_dim = preset == "coord_quadratic" ? 4 : 2;
  const int dim = LongTo<int>(cfg.GetInt("env.dim", default_dim), "env.dim");
  if (dim < 1) throw ConfigError("env.dim must be >= 1");
  FeasibleSet set = BuildSet(cfg, dim);

  auto make = [&](Environment::State state) {
    Environment env(preset, set, std::move(state));
    if (cfg.Has("env.gradient_bound")) {
      const double g = cfg.GetDouble("env.gradient_bound", 0.0);
      if (!(g > 0.0)) throw ConfigError("env.gradient_bound must be > 0");
      env.set_gradient_bound(g);
    }
    return env;
  };

  if (preset == "adversarial") {
    return make(AdversarialScript(AdversarialLosses(cfg, dim, horizon, trial_key)));
  }
  if (preset == "iid" || preset == "corrupted") {
    const Point mean = cfg.GetPoint("env.mean", Point::Zero(dim));
    const double sigma = NonNegative(cfg, "env.sigma", 1.0);
    DistributionSpec base = DistributionSpec::MakeSphereNoise(FamilyLoss(cfg, dim, mean), sigma);
    if (preset == "iid") return make(Iid(std::move(base), set));
    const double budget = NonNegative(cfg, "env.budget", 0.0);
    const double gamma = cfg.GetDouble("env.gamma", 1.0);
    auto schedule = MakeCorruptionSchedule(budget, gamma, UnitDirection(cfg, dim));
    return make(CorruptedIid(std::move(base), std::move(schedule), budget, set));
  }
  if (preset == "rom") {
    const long size = cfg.GetInt("env.pool_size", std::max(horizon, 1));
    return make(Rom(RomPool(cfg, dim, size, trial_key)));
  }
  if (preset == "multipass_rom") {
    const long passes = cfg.GetInt("env.passes", 4);
    if (passes < 1) throw ConfigError("env.passes must be >= 1");
    const long fallback = std::max<long>(1, (std::max(horizon, 1) + passes - 1) / passes);
    const long size = cfg.GetInt("env.pool_size", fallback);
    return make(MultiPassRom(RomPool(cfg, dim, size, trial_key), LongTo<int>(passes, "env.passes")));
  }
  if (preset == "shift") {
    const Point center = cfg.GetPoint("env.mean", Point::Zero(dim));
    return make(Shift(FamilyLoss(cfg, dim, Point::Zero(dim)), center,
                      cfg.GetDouble("env.drift_radius", 0.5),
                      NonNegative(cfg, "env.epsilon", 0.01),
                      NonNegative(cfg, "env.sigma", 1.0)));
  }
  if (preset == "switch") {
    std::vector<Point> means = cfg.GetPointList("env.means");
    if (means.empty()) {
      Point e = Point::Zero(dim);
      e[0] = 1.0;
      means = {e, -e};
    }
    const double sigma = NonNegative(cfg, "env.sigma", 1.0);
    std::vector<DistributionSpec> dists;
    for (const Point& m : means) {
      dists.push_back(DistributionSpec::MakeSphereNoise(FamilyLoss(cfg, dim, m), sigma));
    }
    std::vector<int> rounds;
    for (long r : cfg.GetIntList("env.switches")) rounds.push_back(LongTo<int>(r, "env.switches"));
    if (rounds.empty() && horizon >= 4) rounds = {horizon / 2 + 1};
    return make(Switch(std::move(dists), std::move(rounds), set));
  }
  if (preset == "coord_quadratic") {
    return make(CoordinateQuadratic(dim, set));
  }
  throw ConfigError("unknown env.preset '" + preset + "'");
}

LearnerParams ResolveLearner(const ExperimentConfig& cfg, const Environment& env) {
  LearnerParams p;
  p.preset = cfg.GetString("learner.preset", "");
  const EnvConstants& k = env.constants();
  if (p.preset == "oftrl") {
    const std::string reg = cfg.GetString("learner.regularizer", "unit");
    if (reg == "unit") {
      p.scale = RegularizerScale::kUnit;
    } else if (reg == "double") {
      p.scale = RegularizerScale::kDouble;
    } else {
      throw ConfigError("learner.regularizer must be 'unit' or 'double'");
    }
    const std::string tuning = cfg.GetString("learner.tuning", "default");
    if (cfg.Has("learner.nu")) {
      p.nu = cfg.GetDouble("learner.nu", 0.0);
    } else if (tuning == "worst_case") {
      p.nu = WorstCaseNu(k.diameter, k.gradient_bound);
    } else if (tuning == "default") {
      p.nu = DefaultNu(k.diameter, k.gradient_bound, k.smoothness);
    } else {
      throw ConfigError("learner.tuning must be 'default' or 'worst_case'");
    }
    if (!(p.nu > 0.0)) throw ConfigError("OFTRL needs nu > 0");
  } else if (p.preset == "oftl") {
    p.mu = cfg.Has("learner.mu") ? cfg.GetDouble("learner.mu", 0.0) : k.strong_convexity;
    if (!(p.mu > 0.0)) {
      throw ConfigError("OFTL needs strongly convex mean losses (mu > 0); environment '" +
                        env.name() + "' has mu = " + std::to_string(p.mu));
    }
  } else if (p.preset == "ogd") {
    p.step_scale = cfg.GetDouble("learner.step_scale", 1.0);
    if (!(p.step_scale > 0.0)) throw ConfigError("learner.step_scale must be > 0");
    if (!(k.gradient_bound > 0.0)) throw ConfigError("OGD needs a positive gradient bound");
  } else if (p.preset.empty()) {
    throw ConfigError("learner.preset is required");
  } else {
    throw ConfigError("unknown learner.preset '" + p.preset + "'");
  }
  return p;
}

Learner BuildLearner(const LearnerParams& params, const Environment& env) {
  if (params.preset == "oftrl") return Learner(Oftrl(env.set(), params.nu, params.scale));
  if (params.preset == "oftl") return Learner(Oftl(env.set(), params.mu));
  if (params.preset == "ogd") {
    return Learner(Ogd(env.set(), env.constants().gradient_bound, params.step_scale));
  }
  throw ConfigError("unknown learner.preset '" + params.preset + "'");
}

RegretKind ResolveRegretKind(const ExperimentConfig& cfg) {
  const std::string fallback =
      cfg.GetString("learner.preset", "") == "oftl" ? "value_mean" : "linear_hindsight";
  const std::string kind = cfg.GetString("run.regret", fallback);
  if (kind == "linear_hindsight") return RegretKind::kLinearHindsight;
  if (kind == "value_mean") return RegretKind::kValueMean;
  throw ConfigError("run.regret must be 'linear_hindsight' or 'value_mean'");
}

Trace PlayTrial(Environment& env, Learner& learner, int horizon, std::uint64_t seed) {
  if (horizon < 0) throw ConfigError("horizon must be >= 0");
  const std::uint64_t trial_key =
      CounterRng::TrialKey(seed, static_cast<std::uint64_t>(horizon));
  const double g_bound = env.constants().gradient_bound;
  const int dim = env.set().dim();

  Trace trace;
  trace.env = env.name();
  trace.learner = learner.name();
  trace.seed = seed;
  trace.convention = env.convention();
  trace.mean_curvature_sum = Matrix::Zero(dim, dim);
  trace.mean_linear_sum = Point::Zero(dim);
  trace.records.reserve(horizon);

  for (int t = 1; t <= horizon; ++t) {
    RoundRecord rec;
    rec.t = t;
    rec.eta = learner.CurrentStep();
    rec.x = learner.Predict();
    CounterRng rng = CounterRng::ForRound(trial_key, static_cast<std::uint64_t>(t));
    StepResult step = env.Step(t, rec.x, trace.records, rng);
    rec.g = Grad(step.sample, rec.x);
    if (rec.g.norm() > g_bound * (1.0 + 1e-9) + 1e-12) {
      throw ContractError("gradient norm " + std::to_string(rec.g.norm()) +
                          " exceeds the bound G = " + std::to_string(g_bound) +
                          " at round " + std::to_string(t));
    }
    learner.Observe(rec.g);
    rec.sigma_sq = step.sigma_sq;
    rec.variation_sq = step.variation_sq;
    rec.loss_value = Value(step.sample, rec.x);
    if (const Matrix* a = step.mean.curvature()) trace.mean_curvature_sum += *a;
    trace.mean_linear_sum += step.mean.linear_term();
    rec.xi = std::move(step.sample);
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

Trace RunTrial(const ExperimentConfig& cfg, int horizon, std::uint64_t seed) {
  if (horizon < 0) throw ConfigError("horizon must be >= 0");
  const std::uint64_t trial_key =
      CounterRng::TrialKey(seed, static_cast<std::uint64_t>(horizon));
  Environment env = BuildEnvironment(cfg, horizon, trial_key);
  Learner learner = BuildLearner(ResolveLearner(cfg, env), env);
  return PlayTrial(env, learner, horizon, seed);
}

namespace {

double FinalLinearRegret(const Trace& trace, const Point& u) {
  double r = 0.0;
  for (const RoundRecord& rec : trace.records) r += rec.g.dot(rec.x - u);
  return r;
}

double FinalValueRegret(const Trace& trace, const Point& u) {
  double r = 0.0;
  for (const RoundRecord& rec : trace.records) r += rec.loss_value - Value(rec.xi, u);
  return r;
}

Theorem3Form ResolveTheorem3Form(const ExperimentConfig& cfg) {
  const std::string form = cfg.GetString("run.theorem3", "with_first_round");
  if (form == "with_first_round") return Theorem3Form::kWithFirstRoundTerm;
  if (form == "statement") return Theorem3Form::kStatement;
  throw ConfigError("run.theorem3 must be 'with_first_round' or 'statement'");
}

struct BoundInputs {
  EnvConstants constants;
  LearnerParams params;
  Theorem3Form form;
};

double NuForBound(const BoundInputs& in) {
  if (in.params.preset == "oftrl") return in.params.nu;
  const EnvConstants& k = in.constants;
  return DefaultNu(k.diameter, k.gradient_bound, k.smoothness);
}

double MuForBound(const BoundInputs& in) {
  return in.params.preset == "oftl" ? in.params.mu : in.constants.strong_convexity;
}

double Thm1(const BoundInputs& in, double sigma_bar, double variation_bar, int horizon) {
  const EnvConstants& k = in.constants;
  const double nu = NuForBound(in);
  if (!(nu > 0.0) || !(k.gradient_bound > 0.0)) return kNaN;
  return Theorem1Bound(k.diameter, k.gradient_bound, k.smoothness, nu, sigma_bar,
                       variation_bar, horizon);
}

double Thm3(const BoundInputs& in, double sigma_max, double variation_max, int horizon) {
  const double mu = MuForBound(in);
  if (!(mu > 0.0) || horizon < 2) return kNaN;
  const EnvConstants& k = in.constants;
  return Theorem3Bound(mu, k.smoothness, k.diameter, k.gradient_bound, sigma_max,
                       variation_max, horizon, in.form);
}

TrialSummary Summarize(const Trace& trace, const Environment& env, RegretKind kind,
                       const BoundInputs& in, int horizon, std::uint64_t seed) {
  TrialSummary s;
  s.horizon = horizon;
  s.seed = seed;
  if (!trace.records.empty()) {
    s.linear_regret = FinalLinearRegret(trace, BestComparator(trace, env.set()));
    s.value_regret = FinalValueRegret(trace, MeanLossComparator(trace, env.set()));
    s.aggregates = ComputeCumAggregates(trace);
    s.eta_final = trace.records.back().eta;
  }
  s.regret_final = kind == RegretKind::kValueMean ? s.value_regret : s.linear_regret;
  s.bound_thm1 = Thm1(in, s.aggregates.sigma_bar, s.aggregates.variation_bar, horizon);
  s.bound_thm3 = Thm3(in, std::sqrt(s.aggregates.sigma_sq_max),
                      std::sqrt(s.aggregates.variation_sq_max), horizon);
  s.sigma_sq.reserve(trace.records.size());
  s.variation_sq.reserve(trace.records.size());
  for (const RoundRecord& rec : trace.records) {
    s.sigma_sq.push_back(rec.sigma_sq);
    s.variation_sq.push_back(rec.variation_sq);
  }
  return s;
}

}  // namespace

TrialSummary SummarizeTrial(const ExperimentConfig& cfg, const Trace& trace, int horizon,
                            std::uint64_t seed) {
  const std::uint64_t key = CounterRng::TrialKey(seed, static_cast<std::uint64_t>(horizon));
  const Environment env = BuildEnvironment(cfg, horizon, key);
  const BoundInputs in{env.constants(), ResolveLearner(cfg, env), ResolveTheorem3Form(cfg)};
  return Summarize(trace, env, ResolveRegretKind(cfg), in, horizon, seed);
}

TrialError::TrialError(std::string env, std::string learner, int horizon,
                       std::uint64_t seed, const std::string& what)
    : std::runtime_error("trial failed (env=" + env + ", learner=" + learner +
                         ", T=" + std::to_string(horizon) +
                         ", seed=" + std::to_string(seed) + "): " + what),
      env_(std::move(env)),
      learner_(std::move(learner)),
      horizon_(horizon),
      seed_(seed) {}

std::vector<int> ResolveHorizons(const ExperimentConfig& cfg) {
  std::vector<long> raw = cfg.GetIntList("run.horizons");
  if (raw.empty()) raw = {1000};
  std::vector<int> out;
  for (long h : raw) {
    if (h < 0) throw ConfigError("run.horizons entries must be >= 0");
    out.push_back(LongTo<int>(h, "run.horizons"));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw ConfigError("run.horizons must be strictly increasing");
  }
  return out;
}

std::vector<std::uint64_t> ResolveSeeds(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> out;
  const std::vector<long> listed = cfg.GetIntList("run.seeds");
  if (!listed.empty()) {
    for (long s : listed) {
      if (s < 0) throw ConfigError("run.seeds entries must be >= 0");
      out.push_back(static_cast<std::uint64_t>(s));
    }
  } else {
    long master = cfg.GetInt("run.seed", 0);
    if (const char* env = std::getenv("SEA_OCO_SEED"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const long long v = std::strtoll(env, &end, 10);
      if (end == env || *end != '\0' || v < 0) {
        throw ConfigError(std::string("SEA_OCO_SEED must be a nonnegative integer, got '") +
                          env + "'");
      }
      master = static_cast<long>(v);
    }
    const long n = cfg.GetInt("run.num_seeds", 20);
    if (n < 1) throw ConfigError("run.num_seeds must be >= 1");
    if (master < 0) throw ConfigError("run.seed must be >= 0");
    for (long i = 0; i < n; ++i) out.push_back(static_cast<std::uint64_t>(master + i));
  }
  std::vector<std::uint64_t> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("run.seeds must be distinct");
  }
  return out;
}

SampleMean MeanWithStdErr(std::span<const double> values) {
  if (values.empty()) throw ContractError("mean of an empty sample");
  SampleMean out;
  const auto n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() == 1) {
    out.single = true;
    return out;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

double FitLogLogSlope(std::span<const double> horizons, std::span<const double> values) {
  if (horizons.size() != values.size()) {
    throw ContractError("slope fit needs equally many horizons and values");
  }
  if (horizons.size() < 3) throw ContractError("slope fit needs at least 3 points");
  const std::size_t n = horizons.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(horizons[i] > 0.0) || !(values[i] > 0.0)) {
      throw DomainError("slope fit needs positive horizons and values");
    }
    lx[i] = std::log(horizons[i]);
    ly[i] = std::log(values[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) throw DomainError("slope fit needs distinct horizons");
  return sxy / sxx;
}

Aggregate RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  const std::vector<int> horizons = ResolveHorizons(cfg);
  const std::vector<std::uint64_t> seeds = ResolveSeeds(cfg);
  const RegretKind kind = ResolveRegretKind(cfg);
  const Theorem3Form form = ResolveTheorem3Form(cfg);

  // Configuration errors surface here, before any round is played.
  const Environment probe_env = BuildEnvironment(cfg, horizons.back(), 0);
  const LearnerParams params = ResolveLearner(cfg, probe_env);

  Aggregate agg;
  agg.env = probe_env.name();
  agg.learner = params.preset;
  agg.regret_kind = kind;
  agg.constants = probe_env.constants();
  agg.learner_params = params;

  struct Job {
    int horizon;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int h : horizons) {
    for (std::uint64_t s : seeds) jobs.push_back({h, s});
  }
  std::vector<std::optional<TrialSummary>> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

  long threads = cfg.GetInt("run.threads", 0);
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<long>(threads, static_cast<long>(jobs.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      const Job& job = jobs[i];
      try {
        const std::uint64_t key =
            CounterRng::TrialKey(job.seed, static_cast<std::uint64_t>(job.horizon));
        Environment env = BuildEnvironment(cfg, job.horizon, key);
        const BoundInputs in{env.constants(), ResolveLearner(cfg, env), form};
        Learner learner = BuildLearner(in.params, env);
        const Trace trace = PlayTrial(env, learner, job.horizon, job.seed);
        results[i] = Summarize(trace, env, kind, in, job.horizon, job.seed);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (long k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ConfigError&) {
      throw;
    } catch (const UnknownKeyError&) {
      throw;
    } catch (const std::exception& e) {
      throw TrialError(agg.env, agg.learner, jobs[i].horizon, jobs[i].seed, e.what());
    }
  }

  std::size_t i = 0;
  for (int h : horizons) {
    HorizonAggregate ha;
    ha.horizon = h;
    ha.trials = static_cast<int>(seeds.size());
    const auto n = static_cast<double>(seeds.size());
    double sum_sigma_sq = 0.0, sum_var_sq = 0.0, sum_eta = 0.0;
    std::vector<double> sigma_t(h, 0.0), var_t(h, 0.0);
    const std::size_t first = i;
    for (std::size_t k = 0; k < seeds.size(); ++k, ++i) {
      TrialSummary& s = *results[i];
      sum_sigma_sq += s.aggregates.sigma_sq_cum;
      sum_var_sq += s.aggregates.variation_sq_cum;
      sum_eta += s.eta_final;
      for (int t = 0; t < h; ++t) {
        sigma_t[t] += s.sigma_sq[t];
        var_t[t] += s.variation_sq[t];
      }
    }
    std::vector<double> finals;
    for (std::size_t k = first; k < i; ++k) finals.push_back(results[k]->regret_final);
    const SampleMean stats = MeanWithStdErr(finals);
    ha.mean_regret = stats.mean;
    ha.stderr_regret = stats.stderr_mean;
    ha.single_seed = stats.single;
    if (h > 0) {
      ha.sigma_bar = std::sqrt(sum_sigma_sq / n / h);
      ha.variation_bar = std::sqrt(sum_var_sq / n / h);
      ha.sigma_max = std::sqrt(*std::max_element(sigma_t.begin(), sigma_t.end()) / n);
      ha.variation_max = std::sqrt(*std::max_element(var_t.begin(), var_t.end()) / n);
    }
    ha.mean_eta_final = sum_eta / n;
    const BoundInputs in{agg.constants, params, form};
    ha.bound_thm1 = Thm1(in, ha.sigma_bar, ha.variation_bar, h);
    ha.bound_thm3 = Thm3(in, ha.sigma_max, ha.variation_max, h);
    if (params.preset == "oftrl" && std::isfinite(ha.bound_thm1)) {
      ha.thm1_dominates = ha.mean_regret <= ha.bound_thm1;
    }
    if (params.preset == "oftl" && std::isfinite(ha.bound_thm3)) {
      ha.thm3_dominates = ha.mean_regret <= ha.bound_thm3;
    }
    agg.horizons.push_back(ha);
  }
  for (auto& r : results) agg.trials.push_back(std::move(*r));
  // Per-round series are only needed for the reduction above.
  for (TrialSummary& s : agg.trials) {
    s.sigma_sq.clear();
    s.sigma_sq.shrink_to_fit();
    s.variation_sq.clear();
    s.variation_sq.shrink_to_fit();
  }

  if (agg.horizons.size() >= 3) {
    std::vector<double> hs, vs;
    for (std::size_t k = agg.horizons.size() - 3; k < agg.horizons.size(); ++k) {
      hs.push_back(agg.horizons[k].horizon);
      vs.push_back(agg.horizons[k].mean_regret);
    }
    if (std::all_of(vs.begin(), vs.end(), [](double v) { return v > 0.0; }) &&
        std::all_of(hs.begin(), hs.end(), [](double v) { return v > 0.0; })) {
      agg.slope = FitLogLogSlope(hs, vs);
    }
  }

  if (cfg.Has("run.out")) {
    WriteOutputs(cfg, agg, cfg.GetString("run.out", "."));
  }
  return agg;
}

namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json NumOrNull(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

const char* ToString(RegretKind k) {
  return k == RegretKind::kValueMean ? "value_mean" : "linear_hindsight";
}

}  // namespace

void WriteCsv(const Aggregate& agg, std::ostream& out) {
  out << "T,seed,regret_final,sigma_bar,Sigma_bar,bound_thm1,bound_thm3,eta_final\n";
  for (const TrialSummary& s : agg.trials) {
    out << s.horizon << ',' << s.seed << ',' << Num(s.regret_final) << ','
        << Num(s.aggregates.sigma_bar) << ',' << Num(s.aggregates.variation_bar) << ','
        << Num(s.bound_thm1) << ',' << Num(s.bound_thm3) << ',' << Num(s.eta_final)
        << '\n';
  }
}

std::string SummaryJson(const ExperimentConfig& cfg, const Aggregate& agg) {
  using nlohmann::json;
  json config = json::object();
  for (const auto& [key, value] : cfg.values()) config[key] = value;

  json horizons = json::array();
  bool all_pass = true;
  for (const HorizonAggregate& h : agg.horizons) {
    json j = {{"T", h.horizon},
              {"trials", h.trials},
              {"mean_regret", NumOrNull(h.mean_regret)},
              {"stderr_regret", NumOrNull(h.stderr_regret)},
              {"single_seed_warning", h.single_seed},
              {"sigma_bar", NumOrNull(h.sigma_bar)},
              {"Sigma_bar", NumOrNull(h.variation_bar)},
              {"sigma_max", NumOrNull(h.sigma_max)},
              {"Sigma_max", NumOrNull(h.variation_max)},
              {"mean_eta_final", NumOrNull(h.mean_eta_final)},
              {"bound_thm1", NumOrNull(h.bound_thm1)},
              {"bound_thm3", NumOrNull(h.bound_thm3)}};
    json checks = json::object();
    if (h.thm1_dominates) {
      checks["thm1_dominance"] = *h.thm1_dominates;
      all_pass = all_pass && *h.thm1_dominates;
    }
    if (h.thm3_dominates) {
      checks["thm3_dominance"] = *h.thm3_dominates;
      all_pass = all_pass && *h.thm3_dominates;
    }
    j["checks"] = checks;
    horizons.push_back(j);
  }

  const EnvConstants& k = agg.constants;
  json out = {
      {"config", config},
      {"env", agg.env},
      {"learner", agg.learner},
      {"regret_kind", ToString(agg.regret_kind)},
      {"constants",
       {{"D", k.diameter}, {"G", k.gradient_bound}, {"L", k.smoothness},
        {"mu", k.strong_convexity}}},
      {"learner_params",
       {{"nu", agg.learner_params.nu},
        {"mu", agg.learner_params.mu},
        {"step_scale", agg.learner_params.step_scale},
        {"regularizer",
         agg.learner_params.scale == RegularizerScale::kDouble ? "double" : "unit"}}},
      {"horizons", horizons},
      {"slope", agg.slope ? json(*agg.slope) : json(nullptr)},
      {"all_checks_pass", all_pass}};
  return out.dump(2) + "\n";
}

void WriteOutputs(const ExperimentConfig& cfg, const Aggregate& agg,
                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir.string());
  const std::string stem = agg.env + "_" + agg.learner;
  {
    std::ofstream csv(out_dir / (stem + ".csv"), std::ios::binary);
    if (!csv) throw ConfigError("cannot write " + (out_dir / (stem + ".csv")).string());
    WriteCsv(agg, csv);
  }
  std::ofstream json(out_dir / (stem + ".json"), std::ios::binary);
  if (!json) throw ConfigError("cannot write " + (out_dir / (stem + ".json")).string());
  json << SummaryJson(cfg, agg);
}

}  // namespace sea
