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

#include "cpe/model.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "cpe/error.hpp"

namespace cpe {

const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kLogic: return "logic";
    case ErrorKind::kUnbounded: return "unbounded";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kBudget: return "budget";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kNonUniqueOptimum: return "non-unique optimum";
    case ErrorKind::kUndefinedGap: return "undefined gap";
  }
  return "unknown";
}

Action::Action(Vector coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    Require(std::isfinite(c), "action coordinates must be finite");
  }
}

double Action::Dot(std::span<const double> weights) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) sum += coords_[i] * weights[i];
  return sum;
}

std::string Action::ToString() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i > 0) out += ',';
    // Print -0 as 0.
    const double c = coords_[i] == 0.0 ? 0.0 : coords_[i];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), c);
    out.append(buf, end);
  }
  out += ')';
  return out;
}

bool ApproxEqual(const Action& a, const Action& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

ActionSet::ActionSet(std::vector<Action> actions) {
  std::set<Vector> seen;
  for (auto& a : actions) {
    if (actions_.empty() && seen.empty()) {
      dim_ = a.size();
    } else {
      Require(a.size() == dim_, "actions in a set must share one dimension");
    }
    if (seen.insert(a.coords()).second) actions_.push_back(std::move(a));
  }
}

bool ActionSet::Contains(const Action& a, double tol) const {
  for (const auto& b : actions_) {
    if (ApproxEqual(a, b, tol)) return true;
  }
  return false;
}

void BanditInstance::Validate() const {
  Require(!means.empty(), "bandit instance needs at least one arm");
  for (double m : means) Require(std::isfinite(m), "arm means must be finite");
  Require(std::isfinite(noise_sd) && noise_sd >= 0.0,
          "noise_sd must be a nonnegative real");
  Require(std::isfinite(r_constant) && r_constant > 0.0,
          "R must be a positive real");
  Require(noise_sd <= r_constant,
          "declared R must dominate the observation noise scale");
}

double SampleReward(const BanditInstance& instance, std::size_t arm,
                    Xoshiro256& rng) {
  if (arm >= instance.arm_count()) {
    Fail(ErrorKind::kIndex, "arm index " + std::to_string(arm) +
                                " out of range for " +
                                std::to_string(instance.arm_count()) + " arms");
  }
  const double z = rng.Normal();
  return instance.means[arm] + instance.noise_sd * z;
}

ExploreState::ExploreState(std::size_t arm_count)
    : pulls_(arm_count, 0), reward_sums_(arm_count, 0.0),
      means_(arm_count, 0.0) {}

void ExploreState::Record(std::size_t arm, double reward) {
  if (arm >= pulls_.size()) {
    Fail(ErrorKind::kIndex, "arm index " + std::to_string(arm) +
                                " out of range for " +
                                std::to_string(pulls_.size()) + " arms");
  }
  ++pulls_[arm];
  reward_sums_[arm] += reward;
  means_[arm] = reward_sums_[arm] / static_cast<double>(pulls_[arm]);
  ++round_;
}

ExploreState UpdateState(ExploreState state, std::size_t arm, double reward) {
  state.Record(arm, reward);
  return state;
}

const char* ToString(Strategy strategy) {
  return strategy == Strategy::kNaive ? "naive" : "rcpe";
}

Strategy ParseStrategy(const std::string& name) {
  if (name == "naive") return Strategy::kNaive;
  if (name == "rcpe" || name == "r-cpe") return Strategy::kRCpe;
  Fail(ErrorKind::kValidation,
       "unknown strategy '" + name + "' (expected naive or rcpe)");
}

void GenTSConfig::Validate() const {
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  Require(q >= delta && q <= 0.1, "q must satisfy delta <= q <= 0.1");
  Require(max_rounds >= 1, "max_rounds must be positive");
  if (log_action_count) {
    Require(std::isfinite(*log_action_count) && *log_action_count >= 0.0,
            "log_action_count must be a nonnegative real");
  }
}

}  // namespace cpe
