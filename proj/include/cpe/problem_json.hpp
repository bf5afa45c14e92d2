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

// JSON documents describing oracle problems. See docs/formats.md.
//
//   {"type": "knapsack",   "weights": [1, 2], "capacity": 2}
//   {"type": "production", "requirements": [[1, 2]], "limits": [4]}
//   {"type": "dag_path",   "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]],
//                          "source": 0, "sink": 2}
//   {"type": "topk",       "d": 3, "k": 1}
//   {"type": "explicit",   "actions": [[100, 0], [0, 100]]}

#ifndef CPE_PROBLEM_JSON_HPP_
#define CPE_PROBLEM_JSON_HPP_

#include <string>

#include "cpe/oracles.hpp"
#include "json.hpp"

namespace cpe {

// Throws cpe::Error(kValidation) naming the offending field.
OracleProblem ProblemFromJson(const nlohmann::json& doc);
nlohmann::json ProblemToJson(const OracleProblem& problem);

// Parses text; syntax errors report line and column.
OracleProblem ParseProblem(const std::string& text);
OracleProblem LoadProblemFile(const std::string& path);

}  // namespace cpe

#endif  // CPE_PROBLEM_JSON_HPP_
