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

#ifndef SEA_ERRORS_H_
#define SEA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sea {

// Invalid configuration: bad preset parameters, dimension mismatches,
// violated environment invariants detected at construction.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a function precondition (c <= 0, point outside its domain).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The predict/observe alternation or the environment round sequence was
// violated, or an environment ran out of losses.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric domain error, e.g. the logarithm of a nonpositive value.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sea

#endif  // SEA_ERRORS_H_
