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

#ifndef SEA_CLI_H_
#define SEA_CLI_H_

#include <iosfwd>
#include <vector>

namespace sea {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  // A trial failed or a verify check did not pass.
  kExitFailure = 1,
  // Bad usage, unreadable or invalid configuration, unknown key.
  kExitUsage = 2,
};

//   sea-oco <run|sweep|verify> [--config PATH] [--out DIR] [--worst-case]
//           [--set key=value]...
// SEA_OCO_SEED overrides run.seed.
int CliMain(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sea

#endif  // SEA_CLI_H_
