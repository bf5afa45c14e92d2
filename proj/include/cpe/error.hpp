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

#ifndef CPE_ERROR_HPP_
#define CPE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cpe {

// Every failure raised by the library derives from cpe::Error. The kind
// drives the CLI exit code (validation-like kinds exit 1, budget and
// convergence exit 2).
enum class ErrorKind {
  kValidation,
  kIndex,
  kDomain,
  kLogic,
  kUnbounded,
  kUnsupported,
  kBudget,
  kConvergence,
  kNonUniqueOptimum,
  kUndefinedGap,
};

const char* ToString(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void Require(bool condition, const char* message) {
  if (!condition) Fail(ErrorKind::kValidation, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorKind::kValidation, message);
}

}  // namespace cpe

#endif  // CPE_ERROR_HPP_
