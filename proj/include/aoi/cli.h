// Copyright 2026 The aoi-backup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AOI_CLI_H_
#define AOI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace aoi {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitNonConvergence = 3,
  kExitStructural = 4,
  kExitTruncation = 5,
};

// Entry point of the `aoi` tool: subcommands solve, check, eval and sweep.
// args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace aoi

#endif  // AOI_CLI_H_
