// Copyright 2026 The chr-coind Authors. All Rights Reserved.
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

#ifndef CHR_TOOLS_CLI_HPP_
#define CHR_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace chr::cli {

enum ExitCode : int {
  kSuccess = 0,    // success, equal, member
  kNegative = 1,   // failed, not equal, non-member
  kBounded = 2,    // step limit, bound reached, inconclusive
  kUsage = 3,      // bad arguments, unreadable or malformed input
  kInternal = 4,   // invariant violation
};

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chr::cli

#endif  // CHR_TOOLS_CLI_HPP_
