// Copyright 2026 The uo Authors
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

#ifndef UO_TOOLS_CLI_HPP_
#define UO_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace uo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDegenerate = 2,
  kExhausted = 3,
};

// Runs one command line (args exclude the program name). The report goes to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uo::cli

#endif  // UO_TOOLS_CLI_HPP_
