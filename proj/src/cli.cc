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

#include "sea/cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sea/acceptance.h"
#include "sea/config.h"
#include "sea/errors.h"
#include "sea/harness.h"

namespace sea {
namespace {

struct Options {
  std::string config;
  std::string out;
  bool worst_case = false;
  std::vector<std::string> overrides;
  std::vector<int> only;
};

// "start:stop:factor" -> start, start*factor, ... <= stop.
std::string ExpandSweep(const std::string& spec) {
  const auto parts = SplitTrimmed(spec, ':');
  if (parts.size() != 3) throw ConfigError("run.sweep must be start:stop:factor");
  double start = 0.0, stop = 0.0, factor = 0.0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    factor = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("run.sweep must be start:stop:factor with numbers");
  }
  if (!(start >= 1.0) || !(stop >= start) || !(factor > 1.0)) {
    throw ConfigError("run.sweep needs 1 <= start <= stop and factor > 1");
  }
  std::string list;
  long last = 0;
  for (double h = start; h <= stop * (1.0 + 1e-12); h *= factor) {
    const long v = std::lround(h);
    if (v == last) continue;
    if (!list.empty()) list += ",";
    list += std::to_string(v);
    last = v;
  }
  return list;
}

ExperimentConfig LoadConfig(const Options& opt) {
  if (opt.config.empty()) throw ConfigError("--config is required");
  ExperimentConfig cfg = ExperimentConfig::FromFile(opt.config);
  for (const std::string& o : opt.overrides) cfg.SetAssignment(o);
  if (opt.worst_case) {
    if (cfg.GetString("learner.preset", "") != "oftrl") {
      throw ConfigError("--worst-case applies to the oftrl learner only");
    }
    cfg.Set("learner.tuning", "worst_case");
  }
  if (!opt.out.empty()) cfg.Set("run.out", opt.out);
  cfg.Validate();
  return cfg;
}

void PrintAggregate(const Aggregate& agg, std::ostream& out) {
  out << "env=" << agg.env << " learner=" << agg.learner << " D=" << agg.constants.diameter
      << " G=" << agg.constants.gradient_bound << " L=" << agg.constants.smoothness
      << " mu=" << agg.constants.strong_convexity << "\n";
  char line[200];
  std::snprintf(line, sizeof line, "%10s %6s %14s %12s %10s %10s %14s %14s\n", "T", "seeds",
                "mean_regret", "stderr", "sigma_bar", "Sigma_bar", "bound_thm1", "bound_thm3");
  out << line;
  for (const HorizonAggregate& h : agg.horizons) {
    std::snprintf(line, sizeof line, "%10d %6d %14.6g %12.4g %10.4g %10.4g %14.6g %14.6g%s\n",
                  h.horizon, h.trials, h.mean_regret, h.stderr_regret, h.sigma_bar,
                  h.variation_bar, h.bound_thm1, h.bound_thm3,
                  h.single_seed ? "  (single seed: stderr not estimated)" : "");
    out << line;
  }
  if (agg.slope) out << "log-log slope (largest three T): " << *agg.slope << "\n";
}

int Run(const Options& opt, bool sweep, std::ostream& out) {
  ExperimentConfig cfg = LoadConfig(opt);
  if (sweep) cfg.Set("run.horizons", ExpandSweep(cfg.GetString("run.sweep", "100:100000:10")));
  const Aggregate agg = RunExperiment(cfg);
  PrintAggregate(agg, out);
  if (cfg.Has("run.out")) {
    const std::filesystem::path dir = cfg.GetString("run.out", ".");
    out << "wrote " << (dir / (agg.env + "_" + agg.learner + ".csv")).string() << " and "
        << (dir / (agg.env + "_" + agg.learner + ".json")).string() << "\n";
  }
  return kExitOk;
}

int Verify(const Options& opt, std::ostream& out) {
  AcceptanceOptions acc;
  acc.only = opt.only;
  acc.on_result = [&](const CriterionResult& r) { out << FormatResult(r) << std::endl; };
  const std::vector<CriterionResult> results = RunAcceptance(acc);
  int failed = 0;
  nlohmann::json report = nlohmann::json::array();
  for (const CriterionResult& r : results) {
    failed += r.pass ? 0 : 1;
    report.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass},
                      {"detail", r.detail}, {"seconds", r.seconds}});
  }
  out << (failed == 0 ? "all " + std::to_string(results.size()) + " criteria passed"
                      : std::to_string(failed) + " of " + std::to_string(results.size()) +
                            " criteria failed")
      << "\n";
  if (!opt.out.empty()) {
    std::filesystem::create_directories(opt.out);
    std::ofstream f(std::filesystem::path(opt.out) / "verify.json");
    f << report.dump(2) << "\n";
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online convex optimization between stochastic and adversarial data"};
  app.name("sea-oco");
  app.require_subcommand(1, 1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Experiment config file (INI)");
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_flag("--worst-case", opt.worst_case, "Tune OFTRL with nu = 2DG");
    sub->add_option("--set", opt.overrides, "Override, section.key=value (repeatable)");
  };
  CLI::App* run = app.add_subcommand("run", "Run one experiment configuration");
  CLI::App* sweep = app.add_subcommand("sweep", "Run over the horizon grid run.sweep");
  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance checks");
  add_common(run);
  add_common(sweep);
  add_common(verify);
  verify->add_option("--only", opt.only, "Run only these criteria (1-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (run->parsed()) return Run(opt, false, out);
    if (sweep->parsed()) return Run(opt, true, out);
    return Verify(opt, out);
  } catch (const UnknownKeyError& e) {
    err << "error: unknown configuration key " << e.key() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TrialError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sea
