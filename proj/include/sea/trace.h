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

#ifndef SEA_TRACE_H_
#define SEA_TRACE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sea/geometry.h"
#include "sea/losses.h"

namespace sea {

// How the variation term at t = 1 is charged.
enum class VariationConvention {
  // F^0 := F^1, so the first term is zero.
  kRepeatFirst,
  // The corruption convention c_0 = 0: the first corruption is charged.
  kZeroBefore,
};

const char* ToString(VariationConvention c);

struct RoundRecord {
  int t = 0;
  Point x;
  Point g;
  // Step size used at round t (OFTRL eta_t, OGD step); 0 for OFTL.
  double eta = 0.0;
  double sigma_sq = 0.0;
  double variation_sq = 0.0;
  // f(x_t, xi_t).
  double loss_value = 0.0;
  // The realized loss f(., xi_t).
  LossSpec xi = LossSpec::Linear(Point::Zero(1));
};

struct Trace {
  std::vector<RoundRecord> records;
  std::string env;
  std::string learner;
  std::uint64_t seed = 0;
  VariationConvention convention = VariationConvention::kRepeatFirst;
  // Sum over rounds of the mean losses F^t, as curvature and linear term.
  // Identifies the best fixed comparator against the mean losses.
  Matrix mean_curvature_sum;
  Point mean_linear_sum;
};

}  // namespace sea

#endif  // SEA_TRACE_H_
