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

#include "cpe/algo.hpp"

#include <cmath>
#include <numbers>

#include "cpe/error.hpp"
#include "cpe/rng.hpp"

namespace cpe {

namespace {

// Stream tags mixed into the run seed.
constexpr std::uint64_t kObservationStream = 0x6f62735f73747265ULL;
constexpr std::uint64_t kPerturbationStream = 0x7468657461736d70ULL;

bool Differs(double a, double b) {
  return std::abs(a - b) > kCoordinateTolerance;
}

void CheckSelectionInputs(const Action& best, const Action& challenger,
                          std::span<const std::int64_t> pulls) {
  Require(best.size() == challenger.size() && best.size() == pulls.size(),
          "arm selection inputs disagree in dimension");
  for (auto t : pulls) {
    Require(t >= 1, "arm selection needs every arm pulled at least once");
  }
}

}  // namespace

double StandardNormalUpperTail(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double GaussianUpperQuantile(double q) {
  if (!(q > 0.0 && q <= 0.5)) {
    Fail(ErrorKind::kDomain, "quantile level must lie in (0, 0.5]");
  }
  if (q == 0.5) return 0.0;
  // Pr[Z >= 40] is below the smallest positive double.
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (StandardNormalUpperTail(mid) > q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ConfidenceLog(double delta, std::int64_t t, double log_action_count) {
  return std::log(12.0) + 2.0 * log_action_count +
         2.0 * std::log(static_cast<double>(t)) - std::log(delta);
}

std::int64_t SampleCount(double delta, double q, std::int64_t t,
                         double log_action_count) {
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  Require(q > 0.0, "q must be positive");
  Require(t >= 1, "round index must be >= 1");
  const double m = std::ceil(ConfidenceLog(delta, t, log_action_count) / q);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

double PerturbationVariance(double delta, double q, std::int64_t t, double r,
                            double log_action_count) {
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  Require(q > 0.0 && q < 0.5, "q must lie in (0, 0.5)");
  Require(r > 0.0, "R must be positive");
  Require(t >= 1, "round index must be >= 1");
  const double phi = GaussianUpperQuantile(q);
  return 4.0 * r * r * ConfidenceLog(delta, t, log_action_count) / (phi * phi);
}

std::size_t SelectArmNaive(const Action& empirical_best,
                           const Action& challenger,
                           std::span<const std::int64_t> pulls) {
  CheckSelectionInputs(empirical_best, challenger, pulls);
  std::optional<std::size_t> arm;
  for (std::size_t s = 0; s < pulls.size(); ++s) {
    if (!Differs(empirical_best[s], challenger[s])) continue;
    if (!arm || pulls[s] < pulls[*arm]) arm = s;
  }
  if (!arm) {
    Fail(ErrorKind::kLogic,
         "challenger equals the empirical best; the round should have stopped");
  }
  return *arm;
}

std::size_t SelectArmRCpe(const Action& empirical_best,
                          const Action& challenger,
                          std::span<const std::int64_t> pulls) {
  CheckSelectionInputs(empirical_best, challenger, pulls);
  std::optional<std::size_t> arm;
  double best_score = 0.0;
  for (std::size_t s = 0; s < pulls.size(); ++s) {
    if (!Differs(empirical_best[s], challenger[s])) continue;
    const double diff = challenger[s] - empirical_best[s];
    const double t = static_cast<double>(pulls[s]);
    const double score = diff * diff / (t * (t + 1.0));
    if (!arm || score > best_score) {
      arm = s;
      best_score = score;
    }
  }
  if (!arm) {
    Fail(ErrorKind::kLogic,
         "challenger equals the empirical best; the round should have stopped");
  }
  return *arm;
}

std::size_t SelectArm(Strategy strategy, const Action& empirical_best,
                      const Action& challenger,
                      std::span<const std::int64_t> pulls) {
  return strategy == Strategy::kNaive
             ? SelectArmNaive(empirical_best, challenger, pulls)
             : SelectArmRCpe(empirical_best, challenger, pulls);
}

RoundOutcome ExploreRoundWith(const ExploreState& state,
                              const OracleProblem& problem,
                              const GenTSConfig& config,
                              std::int64_t sample_count, double variance,
                              RoundOptions options) {
  const std::size_t d = state.arm_count();
  Require(problem.dim() == d, "oracle problem and state disagree in arms");
  Require(sample_count >= 1, "at least one perturbed sample is required");
  Require(variance >= 0.0, "perturbation variance must be nonnegative");
  for (auto t : state.pulls()) {
    Require(t >= 1, "every arm must be pulled once before exploring");
  }

  const Vector& means = state.empirical_means();
  Vector scale(d);
  for (std::size_t s = 0; s < d; ++s) {
    scale[s] = std::sqrt(variance / static_cast<double>(state.pulls()[s]));
  }

  RoundOutcome out;
  out.empirical_best = Solve(problem, means);
  out.sample_count = sample_count;
  const std::uint64_t key = DeriveSeed(config.seed, kPerturbationStream);
  const auto t = static_cast<std::uint64_t>(state.round());
  const Action& best = out.empirical_best;

  Vector theta(d);
  bool all_agree = true;
  // argmax over all k, and over the samples whose winner differs from the
  // empirical best. A winner maximizes theta^k . pi, so its gap is >= 0 and
  // the two coincide except for exact ties at zero.
  std::optional<std::size_t> top, top_differing;
  double top_gap = 0.0, top_differing_gap = 0.0;
  Action differing_winner;
  for (std::int64_t k = 0; k < sample_count; ++k) {
    const std::uint64_t sample_key =
        DeriveSeed(key, t, static_cast<std::uint64_t>(k));
    for (std::size_t pair = 0; 2 * pair < d; ++pair) {
      double z0, z1;
      NormalPairForKey(DeriveSeed(sample_key, pair), z0, z1);
      const std::size_t s = 2 * pair;
      theta[s] = means[s] + scale[s] * z0;
      if (s + 1 < d) theta[s + 1] = means[s + 1] + scale[s + 1] * z1;
    }
    Action winner = Solve(problem, theta);
    double gap = 0.0;
    for (std::size_t s = 0; s < d; ++s) gap += theta[s] * (winner[s] - best[s]);
    const auto index = static_cast<std::size_t>(k);
    if (!top || gap > top_gap) {
      top = index;
      top_gap = gap;
    }
    if (!ApproxEqual(winner, best)) {
      all_agree = false;
      if (!top_differing || gap > top_differing_gap) {
        top_differing = index;
        top_differing_gap = gap;
        differing_winner = winner;
      }
    }
    if (options.keep_samples) {
      out.samples.push_back(theta);
      out.winners.push_back(std::move(winner));
      out.gaps.push_back(gap);
    }
  }

  if (all_agree) {
    out.stop = true;
    return out;
  }
  if (top == top_differing) {
    out.best_index = top;
    out.best_gap = top_gap;
  } else {
    // The overall argmax reproduced the empirical best (a tie at gap zero);
    // the challenger must differ somewhere, so take the best differing one.
    out.best_index = top_differing;
    out.best_gap = top_differing_gap;
  }
  out.challenger = std::move(differing_winner);
  out.pulled_arm =
      SelectArm(config.strategy, best, out.challenger, state.pulls());
  return out;
}

RoundOutcome ExploreRound(const ExploreState& state,
                          const OracleProblem& problem,
                          const GenTSConfig& config, double r_constant,
                          double log_action_count, RoundOptions options) {
  const std::int64_t t = state.round();
  const std::int64_t m =
      SampleCount(config.delta, config.q, t, log_action_count);
  const double c = PerturbationVariance(config.delta, config.q, t, r_constant,
                                        log_action_count);
  return ExploreRoundWith(state, problem, config, m, c, options);
}

RunResult Run(const BanditInstance& instance, const OracleProblem& problem,
              const GenTSConfig& config) {
  instance.Validate();
  config.Validate();
  const std::size_t d = instance.arm_count();
  Require(problem.dim() == d, "oracle problem has " +
                                  std::to_string(problem.dim()) +
                                  " arms, instance has " + std::to_string(d));
  Require(config.max_rounds >= static_cast<std::int64_t>(d),
          "max_rounds must allow the initial pull of every arm");
  const double log_count =
      config.log_action_count.value_or(LogActionCountBound(problem));

  Xoshiro256 rng(DeriveSeed(config.seed, kObservationStream));
  ExploreState state(d);
  for (std::size_t s = 0; s < d; ++s) {
    state.Record(s, SampleReward(instance, s, rng));
  }

  RunResult result;
  while (state.round() < config.max_rounds) {
    const std::int64_t t = state.round();
    const std::int64_t m = SampleCount(config.delta, config.q, t, log_count);
    const double c = PerturbationVariance(config.delta, config.q, t,
                                          instance.r_constant, log_count);
    RoundOutcome round = ExploreRoundWith(state, problem, config, m, c);
    if (config.record_trace) {
      result.trace.push_back({t, m, round.best_gap, round.pulled_arm});
    }
    if (round.stop) {
      result.output_action = std::move(round.empirical_best);
      result.stopped_naturally = true;
      break;
    }
    const std::size_t arm = *round.pulled_arm;
    state.Record(arm, SampleReward(instance, arm, rng));
  }
  if (!result.stopped_naturally) {
    result.output_action = Solve(problem, state.empirical_means());
  }
  result.rounds_used = state.round();
  result.per_arm_pulls = state.pulls();
  return result;
}

}  // namespace cpe
