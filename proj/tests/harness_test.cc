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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "sea/errors.h"

namespace sea {
namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

const char* kIid =
    "[env]\n"
    "preset = iid\n"
    "dim = 2\n"
    "mean = 0.3, 0\n"
    "sigma = 0.5\n"
    "[learner]\n"
    "preset = oftrl\n"
    "[run]\n"
    "horizons = 50, 100\n"
    "num_seeds = 3\n"
    "threads = 2\n";

TEST(ConfigTest, ParsesSectionsAndComments) {
  const ExperimentConfig cfg = ExperimentConfig::FromString(
      "# comment\n[env]\npreset = iid\nmean = 1,2\n; another\n[learner]\npreset=ogd\n"
      "[run]\nhorizons = 1e2, 1000\n");
  EXPECT_EQ(cfg.GetString("env.preset", ""), "iid");
  EXPECT_EQ(cfg.GetPoint("env.mean", Point()), P({1, 2}));
  EXPECT_EQ(cfg.GetIntList("run.horizons"), std::vector<long>({100, 1000}));
  EXPECT_NO_THROW(cfg.Validate());
}

TEST(ConfigTest, UnknownKeyNamesTheKey) {
  ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  cfg.SetAssignment("env.budget=3");  // only valid for the corrupted preset
  try {
    cfg.Validate();
    FAIL() << "expected UnknownKeyError";
  } catch (const UnknownKeyError& e) {
    EXPECT_EQ(e.key(), "env.budget");
  }
  ExperimentConfig other = ExperimentConfig::FromString(kIid);
  other.Set("run.colour", "red");
  EXPECT_THROW(other.Validate(), UnknownKeyError);
}

TEST(ConfigTest, OverridesAreLastWins) {
  ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  cfg.SetAssignment("env.sigma=0.25");
  cfg.SetAssignment("env.sigma = 0.75");
  EXPECT_DOUBLE_EQ(cfg.GetDouble("env.sigma", 0), 0.75);
  EXPECT_THROW(cfg.SetAssignment("env.sigma"), ConfigError);
}

TEST(ConfigTest, MalformedInputs) {
  EXPECT_THROW(ExperimentConfig::FromFile("/nonexistent/x.cfg"), ConfigError);
  EXPECT_THROW(ExperimentConfig::FromString("preset = iid\n"), ConfigError);
  const ExperimentConfig cfg = ExperimentConfig::FromString("[env]\nsigma = abc\n");
  EXPECT_THROW(cfg.GetDouble("env.sigma", 0), ConfigError);
  EXPECT_THROW(ExperimentConfig::FromString("[env]\npreset = nope\n[learner]\npreset = oftrl\n")
                   .Validate(),
               ConfigError);
}

TEST(RunTrialTest, DeterministicAndSeedSensitive) {
  const ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  const Trace a = RunTrial(cfg, 200, 7);
  const Trace b = RunTrial(cfg, 200, 7);
  const Trace c = RunTrial(cfg, 200, 8);
  ASSERT_EQ(a.records.size(), 200u);
  bool differs = false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].x, b.records[i].x);
    EXPECT_EQ(a.records[i].g, b.records[i].g);
    EXPECT_EQ(a.records[i].eta, b.records[i].eta);
    differs = differs || a.records[i].g != c.records[i].g;
  }
  EXPECT_TRUE(differs);
}

TEST(RunTrialTest, DegenerateHorizons) {
  const ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  EXPECT_TRUE(RunTrial(cfg, 0, 1).records.empty());
  EXPECT_EQ(RunTrial(cfg, 1, 1).records.size(), 1u);
}

TEST(RunTrialTest, ProtocolOrderAndFeasibility) {
  const ExperimentConfig cfg = ExperimentConfig::FromString(
      "[env]\npreset = lb_rademacher\na = 1.5\nb = 2\n[learner]\npreset = oftrl\n[run]\n");
  // The adversary rejects iterates outside [a, b], so a completed run also
  // shows that x_t reached the environment before xi_t was drawn.
  const Trace t = RunTrial(cfg, 500, 3);
  for (const RoundRecord& r : t.records) {
    EXPECT_GE(r.x[0], 1.5 - 1e-12);
    EXPECT_LE(r.x[0], 2.0 + 1e-12);
  }
}

TEST(RunTrialTest, OftlNeedsStrongConvexity) {
  const ExperimentConfig cfg = ExperimentConfig::FromString(
      "[env]\npreset = iid\nfamily = linear\n[learner]\npreset = oftl\n[run]\n");
  EXPECT_THROW(RunTrial(cfg, 10, 0), ConfigError);
  ExperimentConfig ok = cfg;
  ok.Set("learner.mu", "0.5");
  EXPECT_NO_THROW(RunTrial(ok, 10, 0));
}

// Three hand-chosen losses of norm 2 on the unit disk (D = 2, G = 2), so
// OGD uses step 1/sqrt(t):
//   x1 = 0, x2 = proj(-(2,0)) = (-1,0), x3 = proj((-1,0) - (0,2)/sqrt2)
//      = (-1,-sqrt2)/sqrt3.
// The gradients sum to (0,2), so u* = (0,-1) and the regret is
//   0 + <(0,2), (-1,1)> + <(-2,0), x3 - u*> = 2 + 2/sqrt3.
TEST(RunTrialTest, OgdThreeRoundHandComputation) {
  const FeasibleSet ball = FeasibleSet::UnitBall(2);
  Environment env("script", ball,
                  AdversarialScript({LossSpec::Linear(P({2, 0})), LossSpec::Linear(P({0, 2})),
                                     LossSpec::Linear(P({-2, 0}))}));
  Learner ogd(Ogd(ball, env.constants().gradient_bound, 1.0));
  const Trace tr = PlayTrial(env, ogd, 3, 0);
  EXPECT_NEAR(tr.records[1].x[0], -1.0, 1e-15);
  EXPECT_NEAR(tr.records[2].x[0], -1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(tr.records[2].x[1], -std::sqrt(2.0) / std::sqrt(3.0), 1e-15);
  const RegretCurve c = ComputeRegretCurve(tr, ball);
  EXPECT_EQ(c.comparator, P({0, -1}));
  EXPECT_NEAR(c.linear.back(), 2 + 2 / std::sqrt(3.0), 1e-12);
}

TEST(RunTrialTest, WorstCaseBoundHoldsOnScripts) {
  for (const char* pattern : {"alternating", "blocks", "random"}) {
    ExperimentConfig cfg = ExperimentConfig::FromString(
        "[env]\npreset = adversarial\nblock = 3\nscale = 1.5\n[learner]\npreset = oftrl\n"
        "tuning = worst_case\n[run]\n");
    cfg.Set("env.pattern", pattern);
    for (int h : {1, 2, 10, 333, 2000}) {
      const Trace tr = RunTrial(cfg, h, 5);
      const double r = ComputeRegretCurve(tr, FeasibleSet::UnitBall(2)).linear.back();
      EXPECT_LE(r, WorstCaseBound(2.0, 1.5, h)) << pattern << " T=" << h;
    }
  }
}

TEST(SampleMeanTest, Examples) {
  const std::vector<double> two = {1.0, 3.0};
  const SampleMean s = MeanWithStdErr(two);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.stderr_mean, 1.0);
  EXPECT_FALSE(s.single);
  const std::vector<double> one = {4.0};
  const SampleMean t = MeanWithStdErr(one);
  EXPECT_EQ(t.stderr_mean, 0.0);
  EXPECT_TRUE(t.single);
}

TEST(SlopeTest, Examples) {
  const std::vector<double> hs = {100, 400, 1600};
  std::vector<double> sq, flat(3, 5.0), lin;
  for (double h : hs) {
    sq.push_back(10 * std::sqrt(h));
    lin.push_back(h);
  }
  EXPECT_NEAR(FitLogLogSlope(hs, sq), 0.5, 1e-12);
  EXPECT_NEAR(FitLogLogSlope(hs, flat), 0.0, 1e-12);
  EXPECT_NEAR(FitLogLogSlope(hs, lin), 1.0, 1e-12);
  const std::vector<double> bad = {1, -1, 2};
  EXPECT_THROW(FitLogLogSlope(hs, bad), DomainError);
  EXPECT_THROW(FitLogLogSlope(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
               ContractError);
}

TEST(ExperimentTest, AggregatesAndOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "sea_oco_harness_test";
  std::filesystem::remove_all(dir);
  ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  cfg.Set("run.out", dir.string());
  const Aggregate agg = RunExperiment(cfg);
  ASSERT_EQ(agg.horizons.size(), 2u);
  ASSERT_EQ(agg.trials.size(), 6u);
  EXPECT_EQ(agg.horizons[0].trials, 3);
  EXPECT_DOUBLE_EQ(agg.horizons[1].variation_bar, 0.0);  // IID
  EXPECT_NEAR(agg.horizons[1].sigma_bar, 0.5, 1e-12);
  EXPECT_TRUE(agg.horizons[1].thm1_dominates.value_or(false));
  EXPECT_FALSE(agg.slope.has_value());

  std::ifstream csv(dir / "iid_oftrl.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "T,seed,regret_final,sigma_bar,Sigma_bar,bound_thm1,bound_thm3,eta_final");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 6);
  std::ifstream js(dir / "iid_oftrl.json");
  const nlohmann::json j = nlohmann::json::parse(js);
  EXPECT_EQ(j["config"]["env.preset"], "iid");
  EXPECT_EQ(j["horizons"].size(), 2u);
  EXPECT_TRUE(j["all_checks_pass"].get<bool>());
  std::filesystem::remove_all(dir);
}

TEST(ExperimentTest, SeedPermutationOnlyPermutesRows) {
  ExperimentConfig a = ExperimentConfig::FromString(kIid);
  a.Set("run.seeds", "4, 9, 2");
  ExperimentConfig b = a;
  b.Set("run.seeds", "2, 4, 9");
  b.Set("run.threads", "1");
  const Aggregate ra = RunExperiment(a);
  const Aggregate rb = RunExperiment(b);
  auto find = [](const Aggregate& agg, int h, std::uint64_t s) {
    for (const TrialSummary& t : agg.trials) {
      if (t.horizon == h && t.seed == s) return t.regret_final;
    }
    return std::nan("");
  };
  for (int h : {50, 100}) {
    for (std::uint64_t s : {2u, 4u, 9u}) EXPECT_EQ(find(ra, h, s), find(rb, h, s));
  }
}

TEST(ExperimentTest, SingleSeedFlag) {
  ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  cfg.Set("run.num_seeds", "1");
  const Aggregate agg = RunExperiment(cfg);
  EXPECT_TRUE(agg.horizons[0].single_seed);
  EXPECT_EQ(agg.horizons[0].stderr_regret, 0.0);
}

TEST(ExperimentTest, EnvSeedOverridesMasterSeed) {
  ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  cfg.Set("run.seed", "10");
  ::setenv("SEA_OCO_SEED", "100", 1);
  const std::vector<std::uint64_t> seeds = ResolveSeeds(cfg);
  ::unsetenv("SEA_OCO_SEED");
  EXPECT_EQ(seeds, std::vector<std::uint64_t>({100, 101, 102}));
  EXPECT_EQ(ResolveSeeds(cfg), std::vector<std::uint64_t>({10, 11, 12}));
}

TEST(ExperimentTest, ValidatesHorizonsAndSeeds) {
  ExperimentConfig cfg = ExperimentConfig::FromString(kIid);
  cfg.Set("run.horizons", "100, 50");
  EXPECT_THROW(ResolveHorizons(cfg), ConfigError);
  cfg.Set("run.seeds", "1, 1");
  EXPECT_THROW(ResolveSeeds(cfg), ConfigError);
}

TEST(ExperimentTest, EveryPresetRuns) {
  const char* envs[] = {
      "preset = adversarial\npattern = random\n",
      "preset = iid\nfamily = quadratic\ncurvature = 1, 2\n",
      "preset = corrupted\nbudget = 5\ngamma = 0.5\n",
      "preset = rom\n",
      "preset = multipass_rom\npasses = 3\n",
      "preset = shift\nfamily = quadratic\n",
      "preset = switch\nmeans = 1,0; 0,1; -1,0\nswitches = 10, 20\n",
      "preset = lb_rademacher\n",
      "preset = coord_quadratic\n",
      "preset = iid\ndomain = box\nlo = -1, 0\nhi = 1, 2\n",
  };
  for (const char* env : envs) {
    for (const char* learner : {"oftrl", "ogd"}) {
      const ExperimentConfig cfg = ExperimentConfig::FromString(
          std::string("[env]\n") + env + "[learner]\npreset = " + learner +
          "\n[run]\nhorizons = 30\nnum_seeds = 2\n");
      EXPECT_NO_THROW(RunExperiment(cfg)) << env << learner;
    }
  }
}

}  // namespace
}  // namespace sea
