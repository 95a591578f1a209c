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

#ifndef SEA_ACCEPTANCE_H_
#define SEA_ACCEPTANCE_H_

#include <functional>
#include <string>
#include <vector>

namespace sea {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  // Measured quantities and thresholds, one line.
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  // Worker threads per experiment; 0 picks the hardware concurrency.
  int threads = 0;
  // Criteria to run (1-10); empty means all.
  std::vector<int> only;
  // Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

constexpr int kNumCriteria = 10;

// Runs one acceptance criterion with its built-in configuration. A
// criterion that throws is reported as failed with the message in detail.
CriterionResult RunCriterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options = {});

// "[PASS]  3  sqrt-T rate ...  (12.3 s)  detail"
std::string FormatResult(const CriterionResult& r);

}  // namespace sea

#endif  // SEA_ACCEPTANCE_H_
