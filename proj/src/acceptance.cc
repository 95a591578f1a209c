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

#include "sea/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "sea/config.h"
#include "sea/errors.h"
#include "sea/geometry.h"
#include "sea/harness.h"
#include "sea/learners.h"
#include "sea/losses.h"
#include "sea/metrics.h"
#include "sea/rng.h"

namespace sea {
namespace {

// Fills in run.threads and parses.
ExperimentConfig Config(const std::string& text, const AcceptanceOptions& opt) {
  ExperimentConfig cfg = ExperimentConfig::FromString(text);
  cfg.Set("run.threads", std::to_string(opt.threads));
  cfg.Validate();
  return cfg;
}

std::string Fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

// Shared IID linear environment: zero-mean sphere noise in the unit disk
// (D = 2) with the gradient bound fixed at G = 2.
std::string IidLinear(double sigma, const std::string& horizons, int seeds) {
  return "[env]\npreset = iid\ndim = 2\nradius = 1\nfamily = linear\nmean = 0,0\n"
         "sigma = " + Fmt("%.17g", sigma) + "\ngradient_bound = 2\n"
         "[learner]\npreset = oftrl\n"
         "[run]\nhorizons = " + horizons + "\nnum_seeds = " + std::to_string(seeds) + "\n";
}

const HorizonAggregate& At(const Aggregate& agg, int horizon) {
  for (const HorizonAggregate& h : agg.horizons) {
    if (h.horizon == horizon) return h;
  }
  throw ContractError("missing horizon " + std::to_string(horizon));
}

std::vector<double> MeanRegrets(const Aggregate& agg, std::vector<double>* horizons) {
  std::vector<double> out;
  for (const HorizonAggregate& h : agg.horizons) {
    horizons->push_back(h.horizon);
    out.push_back(h.mean_regret);
  }
  return out;
}

double MeanOf(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double StdErr(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = MeanOf(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

Point RandomPointIn(const FeasibleSet& set, CounterRng& rng) {
  const int d = set.dim();
  if (const auto* ball = std::get_if<Ball>(&set.shape())) {
    const double r = ball->radius * std::pow(rng.Uniform(), 1.0 / d);
    return ball->center + r * SampleUnitSphere(d, rng);
  }
  const Box& box = std::get<Box>(set.shape());
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * rng.Uniform();
  return p;
}

Point RandomNormal(int d, CounterRng& rng, double scale) {
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = scale * rng.Normal();
  return p;
}

FeasibleSet RandomSet(int d, CounterRng& rng) {
  if (rng.Uniform() < 0.5) {
    return FeasibleSet::MakeBall(RandomNormal(d, rng, 0.5), 0.5 + 1.5 * rng.Uniform());
  }
  Point lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = -0.2 - 1.5 * rng.Uniform();
    hi[i] = 0.2 + 1.5 * rng.Uniform();
  }
  return FeasibleSet::MakeBox(lo, hi);
}

// Brute-force minimizer of `objective` over a grid covering the set with
// spacing at most D / 400. Boxes use a 401-point tensor grid (faces and
// corners included); disks use a polar grid, 401 radii by 1600 angles, so
// that boundary minimizers are represented exactly up to the angular
// spacing.
template <typename F>
Point GridArgmin(const FeasibleSet& set, const F& objective) {
  const int d = set.dim();
  Point best = set.Center();
  double best_value = objective(best);
  auto consider = [&](const Point& x) {
    const double v = objective(x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  };
  constexpr int kPoints = 401;
  const auto* ball = std::get_if<Ball>(&set.shape());
  if (ball != nullptr && d == 2) {
    constexpr int kAngles = 1600;
    Point x(2);
    for (int i = 1; i < kPoints; ++i) {
      const double r = ball->radius * static_cast<double>(i) / (kPoints - 1);
      for (int j = 0; j < kAngles; ++j) {
        const double a = 2.0 * M_PI * static_cast<double>(j) / kAngles;
        x[0] = ball->center[0] + r * std::cos(a);
        x[1] = ball->center[1] + r * std::sin(a);
        consider(x);
      }
    }
    return best;
  }
  Point lo(d), hi(d);
  if (ball != nullptr) {
    lo = ball->center.array() - ball->radius;
    hi = ball->center.array() + ball->radius;
  } else {
    lo = std::get<Box>(set.shape()).lo;
    hi = std::get<Box>(set.shape()).hi;
  }
  Point x(d);
  const long total = d == 1 ? kPoints : static_cast<long>(kPoints) * kPoints;
  for (long k = 0; k < total; ++k) {
    long rem = k;
    for (int i = 0; i < d; ++i) {
      const long idx = rem % kPoints;
      rem /= kPoints;
      x[i] = lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx) / (kPoints - 1);
    }
    consider(x);
  }
  return best;
}

// -- Criteria ------------------------------------------------------------------

CriterionResult Named(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

CriterionResult Criterion1(const AcceptanceOptions& opt) {
  CriterionResult r = Named(1, "Convex bound dominance (IID linear, OFTRL)");
  const Aggregate agg = RunExperiment(Config(IidLinear(1.0, "100,1000,10000", 20), opt));
  std::ostringstream os;
  r.pass = true;
  for (const HorizonAggregate& h : agg.horizons) {
    const bool ok = h.mean_regret <= h.bound_thm1;
    r.pass = r.pass && ok;
    os << "T=" << h.horizon << ": " << Fmt("%.2f", h.mean_regret) << " <= "
       << Fmt("%.2f", h.bound_thm1) << (ok ? "" : " FAIL") << "; ";
  }
  os << "nu=" << agg.learner_params.nu;
  r.detail = os.str();
  return r;
}

CriterionResult Criterion2(const AcceptanceOptions& opt) {
  CriterionResult r = Named(2, "Worst-case deterministic bound (adversarial, nu = 2DG)");
  struct Case {
    const char* pattern;
    int seeds;
  };
  const Case cases[] = {{"alternating", 1}, {"blocks", 1}, {"random", 5}};
  r.pass = true;
  double worst_ratio = 0.0;
  int runs = 0;
  for (const Case& c : cases) {
    const std::string text =
        std::string("[env]\npreset = adversarial\ndim = 2\nradius = 1\nfamily = linear\n"
                    "scale = 1\nblock = 7\npattern = ") +
        c.pattern +
        "\n[learner]\npreset = oftrl\ntuning = worst_case\n"
        "[run]\nhorizons = 10,100,1000,10000,100000\nnum_seeds = " +
        std::to_string(c.seeds) + "\n";
    const Aggregate agg = RunExperiment(Config(text, opt));
    const double d = agg.constants.diameter;
    const double g = agg.constants.gradient_bound;
    for (const TrialSummary& s : agg.trials) {
      const double bound = WorstCaseBound(d, g, s.horizon);
      worst_ratio = std::max(worst_ratio, s.linear_regret / bound);
      r.pass = r.pass && s.linear_regret <= bound;
      ++runs;
    }
  }
  r.detail = std::to_string(runs) + " runs up to T=1e5; max regret/bound = " +
             Fmt("%.4f", worst_ratio);
  return r;
}

CriterionResult Criterion3(const AcceptanceOptions& opt) {
  CriterionResult r = Named(3, "sqrt(T) rate and linear-in-sigma scaling");
  const Aggregate full = RunExperiment(Config(IidLinear(1.0, "1000,10000,100000", 20), opt));
  const Aggregate half = RunExperiment(Config(IidLinear(0.5, "100000", 20), opt));
  std::vector<double> hs;
  const std::vector<double> vs = MeanRegrets(full, &hs);
  const double slope = FitLogLogSlope(hs, vs);
  const double ratio = At(full, 100000).mean_regret / At(half, 100000).mean_regret;
  const bool slope_ok = slope >= 0.40 && slope <= 0.60;
  const bool ratio_ok = ratio >= 1.6 && ratio <= 2.4;
  r.pass = slope_ok && ratio_ok;
  r.detail = "slope=" + Fmt("%.3f", slope) + " in [0.40,0.60]; R(sigma=1)/R(sigma=0.5) at T=1e5 = " +
             Fmt("%.3f", ratio) + " in [1.6,2.4]";
  return r;
}

CriterionResult Criterion4(const AcceptanceOptions& opt) {
  CriterionResult r = Named(4, "Strongly convex bound and log(T) growth (IID quadratic, OFTL)");
  const std::string text =
      "[env]\npreset = iid\ndim = 2\nradius = 1\nfamily = quadratic\ncurvature = 1\n"
      "mean = -0.5,0\nsigma = 1\n"
      "[learner]\npreset = oftl\n"
      "[run]\nhorizons = 100,1000,10000\nnum_seeds = 20\n";
  const Aggregate agg = RunExperiment(Config(text, opt));
  std::ostringstream os;
  r.pass = true;
  for (const HorizonAggregate& h : agg.horizons) {
    const bool ok = h.mean_regret <= h.bound_thm3;
    r.pass = r.pass && ok;
    os << "T=" << h.horizon << ": " << Fmt("%.2f", h.mean_regret) << " <= "
       << Fmt("%.1f", h.bound_thm3) << (ok ? "" : " FAIL") << "; ";
  }
  const double growth = At(agg, 10000).mean_regret / At(agg, 1000).mean_regret;
  r.pass = r.pass && growth <= 1.7;
  os << "R(1e4)/R(1e3)=" << Fmt("%.3f", growth) << " <= 1.7";
  r.detail = os.str();
  return r;
}

CriterionResult Criterion5(const AcceptanceOptions& opt) {
  CriterionResult r = Named(5, "Corruption budget scaling");
  double mean[3];
  const int budgets[] = {0, 100, 400};
  for (int i = 0; i < 3; ++i) {
    const std::string text =
        "[env]\npreset = corrupted\ndim = 2\nradius = 1\nfamily = linear\nmean = 0,0\n"
        "sigma = 1\ngradient_bound = 2\ngamma = 1\ndirection = 1,0\nbudget = " +
        std::to_string(budgets[i]) +
        "\n[learner]\npreset = oftrl\n[run]\nhorizons = 10000\nnum_seeds = 20\n";
    mean[i] = RunExperiment(Config(text, opt)).horizons.front().mean_regret;
  }
  const double e100 = mean[1] - mean[0];
  const double e400 = mean[2] - mean[0];
  const double ratio = e400 / e100;
  r.pass = e100 > 0.0 && ratio <= 3.0;
  r.detail = "R(C=0)=" + Fmt("%.2f", mean[0]) + " excess(100)=" + Fmt("%.2f", e100) +
             " excess(400)=" + Fmt("%.2f", e400) + " ratio=" + Fmt("%.3f", ratio) + " <= 3.0";
  return r;
}

CriterionResult Criterion6(const AcceptanceOptions& opt) {
  CriterionResult r = Named(6, "Random order model variance and variation");
  constexpr int kT = 2000;
  const ExperimentConfig cfg = Config(
      "[env]\npreset = rom\ndim = 2\nradius = 1\nfamily = linear\nmean = 0,0\nsigma = 1\n"
      "[learner]\npreset = oftrl\n[run]\n",
      opt);
  std::vector<double> variation;
  bool per_round_ok = true;
  double g = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Trace trace = RunTrial(cfg, kT, seed);
    const Environment env = BuildEnvironment(cfg, kT, CounterRng::TrialKey(seed, kT));
    g = std::max(g, env.constants().gradient_bound);
    const double sigma1 = trace.records.front().sigma_sq;
    double v = 0.0;
    for (const RoundRecord& rec : trace.records) {
      v += rec.variation_sq;
      const double cap = static_cast<double>(kT) / (kT - rec.t + 1) * sigma1;
      if (rec.sigma_sq > cap * (1.0 + 1e-9) + 1e-12) per_round_ok = false;
    }
    variation.push_back(v);
  }
  const double mean_var = MeanOf(variation);
  std::ostringstream os;
  os << "E[Sigma^2]=" << Fmt("%.4f", mean_var) << " <= 8G^2=" << Fmt("%.3f", 8 * g * g)
     << "; per-round sigma_t^2 cap " << (per_round_ok ? "holds" : "VIOLATED");
  bool multipass_ok = true;
  for (int passes : {1, 4, 16}) {
    ExperimentConfig mp = Config(
        "[env]\npreset = multipass_rom\ndim = 2\nradius = 1\nfamily = linear\nmean = 0,0\n"
        "sigma = 1\npasses = " + std::to_string(passes) + "\n[learner]\npreset = oftrl\n[run]\n",
        opt);
    const int n = (kT + passes - 1) / passes;
    std::vector<double> spikes, rest;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      try {
        const Trace trace = RunTrial(mp, kT, seed);
        for (const RoundRecord& rec : trace.records) {
          const bool boundary = rec.t > 1 && (rec.t - 1) % n == 0;
          (boundary ? spikes : rest).push_back(rec.variation_sq);
        }
      } catch (const ProtocolError& e) {
        multipass_ok = false;
        os << "; P=" << passes << " protocol error: " << e.what();
      }
    }
    os << "; P=" << passes << " boundary spike " << Fmt("%.3g", MeanOf(spikes))
       << " vs " << Fmt("%.3g", MeanOf(rest));
  }
  r.pass = mean_var <= 8.0 * g * g && per_round_ok && multipass_ok;
  r.detail = os.str();
  return r;
}

CriterionResult Criterion7(const AcceptanceOptions& opt) {
  CriterionResult r = Named(7, "Lower-bound adversary forces sqrt(T) regret");
  const std::string text =
      "[env]\npreset = lb_rademacher\na = 1\nb = 2\nscale = 1\ngradient_bound = 1\n"
      "[learner]\npreset = oftrl\ntuning = worst_case\n"
      "[run]\nhorizons = 1000,10000,100000\nnum_seeds = 50\n";
  const Aggregate agg = RunExperiment(Config(text, opt));
  std::vector<double> hs;
  const std::vector<double> vs = MeanRegrets(agg, &hs);
  const double slope = FitLogLogSlope(hs, vs);
  const double d = agg.constants.diameter;
  const double g = agg.constants.gradient_bound;
  const double target = 0.05 * d * g * std::sqrt(100000.0);
  const double final_mean = At(agg, 100000).mean_regret;
  r.pass = slope >= 0.40 && final_mean >= target;
  r.detail = "slope=" + Fmt("%.3f", slope) + " >= 0.40; R(1e5)=" + Fmt("%.2f", final_mean) +
             " >= 0.05 DG sqrt(T)=" + Fmt("%.2f", target);
  return r;
}

struct VarCheck {
  std::string name;
  std::vector<double> var_t, d2, cum;  // cum = sigma^(2) + Sigma^(2)
};

VarCheck CollectVariation(const std::string& name, const ExperimentConfig& cfg, int horizon,
                          int seeds, const Point* probe) {
  VarCheck out;
  out.name = name;
  for (int s = 0; s < seeds; ++s) {
    const auto seed = static_cast<std::uint64_t>(s);
    const Trace trace = RunTrial(cfg, horizon, seed);
    const Environment env = BuildEnvironment(cfg, horizon, CounterRng::TrialKey(seed, horizon));
    std::vector<LossSpec> losses;
    double cum = 0.0;
    for (const RoundRecord& rec : trace.records) {
      losses.push_back(rec.xi);
      cum += rec.sigma_sq + rec.variation_sq;
    }
    const Point p = probe != nullptr ? *probe : env.set().Center();
    const GradualVariationDiagnostics diag = ComputeGradualVariation(losses, p, env.set());
    out.var_t.push_back(diag.var_t);
    out.d2.push_back(diag.d2);
    out.cum.push_back(cum);
  }
  return out;
}

CriterionResult Criterion8(const AcceptanceOptions& opt) {
  CriterionResult r = Named(8, "Gradual-variation separation and Var_T lower bound");
  constexpr int kT = 1000;
  constexpr int kDim = 4;
  std::ostringstream os;
  Point e1 = Point::Zero(kDim);
  e1[0] = 1.0;
  const VarCheck coord = CollectVariation(
      "coord_quadratic",
      Config("[env]\npreset = coord_quadratic\ndim = 4\n[learner]\npreset = oftrl\n[run]\n", opt),
      kT, 100, &e1);
  const double d2 = MeanOf(coord.d2);
  const double cum = MeanOf(coord.cum);
  const bool gap_ok = d2 >= kT / 4.0 && cum <= static_cast<double>(kT) / kDim + 1e-9 * kT;
  os << "coord d=4: E[D_2]=" << Fmt("%.1f", d2) << " >= " << kT / 4
     << ", E[sigma2+Sigma2]=" << Fmt("%.1f", cum) << " <= " << kT / kDim;
  r.pass = gap_ok;

  const char* learner = "[learner]\npreset = oftrl\n[run]\n";
  struct EnvCase {
    const char* name;
    std::string text;
  };
  const std::vector<EnvCase> cases = {
      {"iid", "[env]\npreset = iid\nfamily = linear\nmean = 0.3,0\nsigma = 1\n"},
      {"iid_quadratic", "[env]\npreset = iid\nfamily = quadratic\nmean = -0.5,0\nsigma = 1\n"},
      {"adversarial", "[env]\npreset = adversarial\npattern = random\n"},
      {"corrupted", "[env]\npreset = corrupted\nmean = 0,0\nsigma = 1\nbudget = 100\n"},
      {"rom", "[env]\npreset = rom\nsigma = 1\n"},
      {"multipass_rom", "[env]\npreset = multipass_rom\npasses = 4\nsigma = 1\n"},
      {"shift", "[env]\npreset = shift\nepsilon = 0.01\nsigma = 1\n"},
      {"switch", "[env]\npreset = switch\nmeans = 1,0; -1,0\nswitches = 200,400,600,800\n"},
      {"lb_rademacher", "[env]\npreset = lb_rademacher\n"},
  };
  std::vector<VarCheck> checks = {coord};
  for (const EnvCase& c : cases) {
    checks.push_back(CollectVariation(c.name, Config(c.text + learner, opt), kT, 100, nullptr));
  }
  bool varT_ok = true;
  os << "; Var_T >= (sigma2+Sigma2)/5 - 3SE:";
  for (const VarCheck& c : checks) {
    std::vector<double> diff;
    for (std::size_t i = 0; i < c.var_t.size(); ++i) diff.push_back(c.var_t[i] - c.cum[i] / 5.0);
    const bool ok = MeanOf(diff) >= -3.0 * StdErr(diff);
    varT_ok = varT_ok && ok;
    os << ' ' << c.name << '=' << (ok ? "ok" : "FAIL");
  }
  r.pass = r.pass && varT_ok;
  r.detail = os.str();
  return r;
}

CriterionResult Criterion9(const AcceptanceOptions&) {
  CriterionResult r = Named(9, "OFTRL / OFTL argmin oracle equivalence");
  CounterRng rng(0x0c1e);
  double worst = 0.0;  // max ||x_pred - x_grid|| / D
  int states = 0;
  for (int d = 1; d <= 2; ++d) {
    for (int k = 0; k < 100; ++k, ++states) {
      const FeasibleSet set = RandomSet(d, rng);
      const double diam = set.Diameter();
      const int rounds = static_cast<int>(rng.Below(9));
      std::vector<Point> grads;
      for (int s = 0; s < rounds; ++s) grads.push_back(RandomNormal(d, rng, 1.0 + 2.0 * rng.Uniform()));

      // OFTRL: eta recomputed from its definition.
      const double nu = 0.1 + 5.0 * rng.Uniform();
      const auto scale = rng.Uniform() < 0.5 ? RegularizerScale::kUnit : RegularizerScale::kDouble;
      Oftrl oftrl(set, nu, scale);
      double denom = nu;
      Point prev = Point::Zero(d);
      Point sum = Point::Zero(d);
      for (const Point& g : grads) {
        oftrl.Predict();
        oftrl.Observe(g);
        const double eta = diam * diam / denom;
        denom += eta * (g - prev).squaredNorm();
        prev = g;
        sum += g;
      }
      const double eta_t = diam * diam / denom;
      const double c = static_cast<double>(static_cast<int>(scale)) / eta_t;
      const Point theta = sum + prev;
      const Point x_oftrl = oftrl.Predict();
      const Point grid_oftrl = GridArgmin(
          set, [&](const Point& x) { return theta.dot(x) + c * x.squaredNorm(); });
      worst = std::max(worst, (x_oftrl - grid_oftrl).norm() / diam);

      // OFTL: surrogate losses summed explicitly around the played points.
      if (grads.empty()) grads.push_back(RandomNormal(d, rng, 1.0));
      const double mu = 0.2 + 3.0 * rng.Uniform();
      Oftl oftl(set, mu);
      std::vector<Point> played;
      for (const Point& g : grads) {
        played.push_back(oftl.Predict());
        oftl.Observe(g);
      }
      const Point x_oftl = oftl.Predict();
      const Point grid_oftl = GridArgmin(set, [&](const Point& x) {
        double v = grads.back().dot(x);
        for (std::size_t s = 0; s < grads.size(); ++s) {
          v += grads[s].dot(x - played[s]) + 0.5 * mu * (x - played[s]).squaredNorm();
        }
        return v;
      });
      worst = std::max(worst, (x_oftl - grid_oftl).norm() / diam);
    }
  }
  r.pass = worst <= 0.005;
  r.detail = std::to_string(states) + " states per learner (d=1,2); max distance to grid argmin = " +
             Fmt("%.5f", worst) + " D <= 0.005 D";
  return r;
}

CriterionResult Criterion10(const AcceptanceOptions& opt) {
  CriterionResult r = Named(10, "Sphere-noise calibration and projection/comparator invariants");
  std::ostringstream os;
  // Calibration.
  constexpr int kDraws = 100000;
  constexpr int kDim = 3;
  const double sigma = 0.7;
  Point base(kDim);
  base << 0.3, -0.2, 0.1;
  const DistributionSpec dist = DistributionSpec::MakeSphereNoise(LossSpec::Linear(base), sigma);
  CounterRng rng(0xca11b);
  Point mean = Point::Zero(kDim);
  std::vector<Point> draws;
  draws.reserve(kDraws);
  for (int i = 0; i < kDraws; ++i) {
    draws.push_back(Sample(dist, rng).linear_term());
    mean += draws.back();
  }
  mean /= kDraws;
  double total = 0.0;
  Point per_coord = Point::Zero(kDim);
  for (const Point& g : draws) {
    total += (g - mean).squaredNorm();
    per_coord += (g - mean).cwiseAbs2();
  }
  total /= (kDraws - 1);
  per_coord /= (kDraws - 1);
  const double target = sigma * sigma;
  bool calib_ok = std::abs(total / target - 1.0) <= 0.02;
  for (int i = 0; i < kDim; ++i) {
    calib_ok = calib_ok && std::abs(per_coord[i] / (target / kDim) - 1.0) <= 0.02;
  }
  os << "variance " << Fmt("%.5f", total) << " vs " << Fmt("%.5f", target)
     << ", per-coordinate max rel err "
     << Fmt("%.4f", ((per_coord / (target / kDim)).array() - 1.0).abs().maxCoeff());

  // Projection: feasibility, idempotence, variational inequality.
  int violations = 0;
  CounterRng prng(0x9e0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(prng.Below(5));
    const FeasibleSet set = RandomSet(d, prng);
    const Point p = RandomNormal(d, prng, 3.0);
    const Point q = Project(p, set);
    if (!set.Contains(q)) ++violations;
    if ((Project(q, set) - q).norm() > 1e-12) ++violations;
    for (int k = 0; k < 50; ++k) {
      const Point y = RandomPointIn(set, prng);
      if ((p - q).dot(y - q) > 1e-10 * (1.0 + p.norm())) ++violations;
    }
    // Comparator optimality.
    std::vector<Point> grads;
    for (int k = 0; k < 5; ++k) grads.push_back(RandomNormal(d, prng, 1.0));
    const Point u = BestComparator(grads, set);
    Point gsum = Point::Zero(d);
    for (const Point& g : grads) gsum += g;
    for (int k = 0; k < 1000; ++k) {
      if (gsum.dot(u) > gsum.dot(RandomPointIn(set, prng)) + 1e-12) ++violations;
    }
  }
  // Regret curve telescoping.
  const ExperimentConfig cfg = Config(
      "[env]\npreset = iid\nmean = 0.4,0\nsigma = 1\n[learner]\npreset = oftrl\n[run]\n", opt);
  const Trace trace = RunTrial(cfg, 200, 3);
  const Environment env = BuildEnvironment(cfg, 200, CounterRng::TrialKey(3, 200));
  const RegretCurve curve = ComputeRegretCurve(trace, env.set());
  for (std::size_t k = 1; k < curve.linear.size(); ++k) {
    const RoundRecord& rec = trace.records[k];
    if (curve.linear[k] != curve.linear[k - 1] + rec.g.dot(rec.x - curve.comparator)) ++violations;
  }
  os << "; invariant violations: " << violations;
  r.pass = calib_ok && violations == 0;
  r.detail = os.str();
  return r;
}

}  // namespace

CriterionResult RunCriterion(int id, const AcceptanceOptions& options) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static const Fn kCriteria[kNumCriteria] = {Criterion1, Criterion2, Criterion3, Criterion4,
                                             Criterion5, Criterion6, Criterion7, Criterion8,
                                             Criterion9, Criterion10};
  if (id < 1 || id > kNumCriteria) throw ConfigError("no acceptance criterion " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = kCriteria[id - 1](options);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options) {
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int i = 1; i <= kNumCriteria; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(RunCriterion(id, options));
    if (options.on_result) options.on_result(out.back());
  }
  return out;
}

std::string FormatResult(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %2d  %-62s (%6.1f s)  ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace sea
