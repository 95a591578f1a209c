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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace sea {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sea-oco");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = CliMain(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("sea_oco_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
    config_ = (dir_ / "exp.cfg").string();
    std::ofstream(config_) << "[env]\npreset = iid\nsigma = 0.5\n"
                              "[learner]\npreset = oftrl\n"
                              "[run]\nhorizons = 20, 40\nnum_seeds = 2\nsweep = 10:40:2\n";
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
  std::string config_;
};

TEST_F(CliTest, RunWritesOutputs) {
  const Result r = Cli({"run", "--config", config_, "--out", (dir_ / "out").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / "iid_oftrl.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / "iid_oftrl.json"));
}

TEST_F(CliTest, SweepExpandsGrid) {
  const Result r = Cli({"sweep", "--config", config_, "--out", (dir_ / "s").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream csv(dir_ / "s" / "iid_oftrl.csv");
  int rows = -1;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 3 * 2);  // T = 10, 20, 40
}

TEST_F(CliTest, MissingConfigIsUsageError) {
  EXPECT_EQ(Cli({"run", "--config", (dir_ / "missing.cfg").string()}).code, 2);
  EXPECT_EQ(Cli({"run"}).code, 2);
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"frobnicate"}).code, 2);
}

TEST_F(CliTest, UnknownKeyReported) {
  const Result r = Cli({"run", "--config", config_, "--set", "env.wobble=1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("env.wobble"), std::string::npos);
}

TEST_F(CliTest, WorstCaseFlagSetsTuning) {
  const Result r = Cli({"run", "--config", config_, "--worst-case", "--set", "run.horizons=10",
                        "--out", (dir_ / "w").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream js(dir_ / "w" / "iid_oftrl.json");
  std::stringstream buf;
  buf << js.rdbuf();
  EXPECT_NE(buf.str().find("\"learner.tuning\": \"worst_case\""), std::string::npos);
}

TEST_F(CliTest, TrialFailureNamesTrial) {
  std::ofstream(config_) << "[env]\npreset = multipass_rom\npool_size = 3\npasses = 1\n"
                            "[learner]\npreset = oftrl\n[run]\nhorizons = 10\nnum_seeds = 1\nseed = 4\n";
  const Result r = Cli({"run", "--config", config_});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("T=10"), std::string::npos);
  EXPECT_NE(r.err.find("seed=4"), std::string::npos);
}

TEST_F(CliTest, VerifySingleCriterion) {
  const Result r = Cli({"verify", "--only", "10"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("[PASS] 10"), std::string::npos);
}

}  // namespace
}  // namespace sea
