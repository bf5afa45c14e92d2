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

// Core records shared by every module: bandit instances, actions, the
// running exploration state and algorithm configuration.
//
// Arms are indexed from 0 throughout the library.

#ifndef CPE_MODEL_HPP_
#define CPE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpe/rng.hpp"

namespace cpe {

using Vector = std::vector<double>;

// Coordinates closer than this are treated as equal when comparing actions
// produced by floating-point oracles.
inline constexpr double kCoordinateTolerance = 1e-9;

// A real vector pi in R^d. Coordinates may be any finite reals (counts,
// LP vertex coordinates, 0/1 indicators, ...).
class Action {
 public:
  Action() = default;
  explicit Action(Vector coords);
  Action(std::initializer_list<double> coords) : Action(Vector(coords)) {}

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const Vector& coords() const { return coords_; }
  std::span<const double> view() const { return coords_; }

  double Dot(std::span<const double> weights) const;

  // Exact coordinate-wise equality.
  friend bool operator==(const Action&, const Action&) = default;
  // Lexicographic order on coordinates.
  friend auto operator<=>(const Action& a, const Action& b) {
    return a.coords_ <=> b.coords_;
  }

  // "(2,0)"-style rendering with shortest round-trip formatting.
  std::string ToString() const;

 private:
  Vector coords_;
};

bool ApproxEqual(const Action& a, const Action& b,
                 double tol = kCoordinateTolerance);

// Ordered, duplicate-free list of actions of common dimension.
class ActionSet {
 public:
  ActionSet() = default;
  // Drops exact duplicates, keeping the first occurrence. Throws on
  // inconsistent dimensions or non-finite coordinates.
  explicit ActionSet(std::vector<Action> actions);

  std::size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }
  std::size_t dim() const { return dim_; }
  const Action& operator[](std::size_t i) const { return actions_[i]; }
  const std::vector<Action>& actions() const { return actions_; }
  auto begin() const { return actions_.begin(); }
  auto end() const { return actions_.end(); }

  bool Contains(const Action& a, double tol = kCoordinateTolerance) const;

 private:
  std::vector<Action> actions_;
  std::size_t dim_ = 0;
};

// Gaussian bandit: arm s returns means[s] + N(0, noise_sd^2).
struct BanditInstance {
  Vector means;
  double noise_sd = 0.0;
  // Declared sub-Gaussian scale R used by the algorithm.
  double r_constant = 1.0;

  std::size_t arm_count() const { return means.size(); }
  void Validate() const;
};

double SampleReward(const BanditInstance& instance, std::size_t arm,
                    Xoshiro256& rng);

// Pull counts and reward sums per arm. Means are derived on demand from
// (sum, count) so they equal the arithmetic mean of delivered rewards.
class ExploreState {
 public:
  explicit ExploreState(std::size_t arm_count);

  std::size_t arm_count() const { return pulls_.size(); }
  std::int64_t round() const { return round_; }
  const std::vector<std::int64_t>& pulls() const { return pulls_; }
  const Vector& reward_sums() const { return reward_sums_; }
  const Vector& empirical_means() const { return means_; }

  void Record(std::size_t arm, double reward);

 private:
  std::int64_t round_ = 0;
  std::vector<std::int64_t> pulls_;
  Vector reward_sums_;
  Vector means_;
};

ExploreState UpdateState(ExploreState state, std::size_t arm, double reward);

enum class Strategy { kNaive, kRCpe };

const char* ToString(Strategy strategy);
Strategy ParseStrategy(const std::string& name);

struct GenTSConfig {
  double delta = 0.05;
  double q = 0.1;
  Strategy strategy = Strategy::kRCpe;
  // Cap on total arm pulls, initialization included.
  std::int64_t max_rounds = 10'000'000;
  // Value of log|A| used by the sampling schedule. When unset, a bound is
  // computed from the oracle problem.
  std::optional<double> log_action_count;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void Validate() const;
};

struct RoundSummary {
  std::int64_t t = 0;
  std::int64_t samples = 0;
  double max_gap = 0.0;
  std::optional<std::size_t> pulled_arm;
};

struct RunResult {
  Action output_action;
  std::int64_t rounds_used = 0;
  bool stopped_naturally = false;
  std::vector<std::int64_t> per_arm_pulls;
  std::vector<RoundSummary> trace;
};

}  // namespace cpe

#endif  // CPE_MODEL_HPP_
