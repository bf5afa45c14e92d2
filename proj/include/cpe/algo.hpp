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

// GenTS-Explore: best-action identification for real-valued combinatorial
// bandits via Gaussian perturbation of the empirical means.
//
// Each round t computes the empirically best action
//   pi_hat = Oracle(mu_hat(t))
// and draws M(delta, q, t) perturbed mean vectors
//   theta^k_s ~ N(mu_hat_s(t), C(delta, q, t) / T_s(t)).
// If every perturbed winner Oracle(theta^k) equals pi_hat the algorithm
// stops and returns pi_hat. Otherwise the winner with the largest perturbed
// gap theta^k . (pi_tilde^k - pi_hat) is the challenger, and one arm is
// pulled according to the configured selection strategy.

#ifndef CPE_ALGO_HPP_
#define CPE_ALGO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cpe/model.hpp"
#include "cpe/oracles.hpp"

namespace cpe {

// Pr[Z >= x] for standard normal Z.
double StandardNormalUpperTail(double x);

// phi(q): the x >= 0 with Pr[Z >= x] = q, for q in (0, 0.5]. Bisection on
// the complementary error function; |UpperTail(result) - q| <= 1e-10.
double GaussianUpperQuantile(double q);

// log(12 |A|^2 t^2 / delta) with natural logarithms.
double ConfidenceLog(double delta, std::int64_t t, double log_action_count);

// M(delta, q, t) = ceil(ConfidenceLog / q), at least 1.
std::int64_t SampleCount(double delta, double q, std::int64_t t,
                         double log_action_count);

// C(delta, q, t) = 4 R^2 ConfidenceLog / phi(q)^2.
double PerturbationVariance(double delta, double q, std::int64_t t, double r,
                            double log_action_count);

// argmin of T_s over coordinates where the two actions differ.
std::size_t SelectArmNaive(const Action& empirical_best,
                           const Action& challenger,
                           std::span<const std::int64_t> pulls);

// argmax of |challenger_s - empirical_best_s|^2 / (T_s (T_s + 1)), i.e. the
// arm whose extra pull most reduces sum_s diff_s^2 / T_s.
std::size_t SelectArmRCpe(const Action& empirical_best,
                          const Action& challenger,
                          std::span<const std::int64_t> pulls);

std::size_t SelectArm(Strategy strategy, const Action& empirical_best,
                      const Action& challenger,
                      std::span<const std::int64_t> pulls);

struct RoundOutcome {
  Action empirical_best;
  // Per-sample winners and perturbed gaps; filled only when requested.
  std::vector<Action> winners;
  Vector gaps;
  std::vector<Vector> samples;
  std::int64_t sample_count = 0;
  std::optional<std::size_t> best_index;
  Action challenger;
  double best_gap = 0.0;
  bool stop = false;
  std::optional<std::size_t> pulled_arm;
};

struct RoundOptions {
  bool keep_samples = false;
};

// One iteration of the main loop at round t = state.round(). Requires
// T_s >= 1 for every arm. Perturbations are keyed by (config.seed, t, k, s)
// and do not depend on evaluation order.
RoundOutcome ExploreRound(const ExploreState& state,
                          const OracleProblem& problem,
                          const GenTSConfig& config, double r_constant,
                          double log_action_count, RoundOptions options = {});

// As ExploreRound with an explicit sample count and perturbation variance
// numerator (variance of theta_s is variance / T_s).
RoundOutcome ExploreRoundWith(const ExploreState& state,
                              const OracleProblem& problem,
                              const GenTSConfig& config,
                              std::int64_t sample_count, double variance,
                              RoundOptions options = {});

// Full algorithm: one pull per arm, then rounds until the stopping rule
// fires or config.max_rounds total pulls have been made.
RunResult Run(const BanditInstance& instance, const OracleProblem& problem,
              const GenTSConfig& config);

}  // namespace cpe

#endif  // CPE_ALGO_HPP_
