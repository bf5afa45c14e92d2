// Copyright 2026 The cpe Authors
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

// The `cpe` command-line front end.
//
//   cpe run      --problem P.json --mu 1,2,3 | --gen knapsack --d 10
//   cpe compare  --gen knapsack|production|custom --d 10 --runs 30 --seed 7
//   cpe hardness --problem P.json --mu 0.3,0.2,0.1
//   cpe oracle   --problem P.json --nu 1.0,1.5
//
// Exit status: 0 on success, 1 on invalid input, 2 when a computation runs
// out of budget or fails to converge.

#ifndef CPE_CLI_HPP_
#define CPE_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace cpe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitBudget = 2;

// args excludes the program name. Results go to `out` unless --output is
// given; diagnostics and progress go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

int RunCli(int argc, char** argv);

// Parses "1,2.5,-3" (commas and/or whitespace) or, when text names an
// existing file, the file's contents (same syntax or a JSON array).
std::vector<double> ParseVectorArgument(const std::string& text);

}  // namespace cpe

#endif  // CPE_CLI_HPP_
