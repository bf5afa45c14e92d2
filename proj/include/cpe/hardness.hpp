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

// Instance difficulty over an explicit action set A with true means mu.
//
// For pi* = argmax mu . pi and each arm s:
//   G-gap     D(s) = min_{pi != pi*, pi_s != pi*_s} mu.(pi* - pi) / |pi*_s - pi_s|
//   H         sum_s D(s)^-2
//   CPE gap   D_s  = min_{pi_s != pi*_s} mu.(pi* - pi), H' = sum_s D_s^-2
//   U_s       max_{pi', pi: pi_s != pi*_s} sum_e |pi_e - pi'_e|^2 / |pi*_s - pi_s|^2
//   V_s       max_{pi', pi: pi_s != pi*_s}
//                 |pi_s - pi'_s| sum_e |pi_e - pi'_e| / |pi*_s - pi_s|^2
//   H_N = sum_s U_s / D(s)^2,  H_R = sum_s V_s / D(s)^2
//   width     max_{pi, pi'} sum_e |pi_e - pi'_e|
//
// The allocation lower bound Low(A) is the value of
//   min sum_s tau_s  s.t.  sum_s |pi*_s - pi_s|^2 / tau_s <= (mu.(pi* - pi))^2
// for every pi != pi*, equivalently
//   rho* = min_{lambda in simplex} max_{pi != pi*}
//              sum_s |pi*_s - pi_s|^2 / lambda_s / (mu.(pi* - pi))^2.

#ifndef CPE_HARDNESS_HPP_
#define CPE_HARDNESS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cpe/error.hpp"
#include "cpe/model.hpp"
#include "json.hpp"

namespace cpe {

Action BestAction(const ActionSet& actions, std::span<const double> mu);

struct GGap {
  double gap = 0.0;
  Action action;
};

// Throws kUndefinedGap when no suboptimal action differs from pi* at s.
GGap ComputeGGap(const ActionSet& actions, std::span<const double> mu,
                 std::size_t s);

struct LowerBoundOptions {
  double tol = 1e-3;
  int max_iterations = 100'000;
};

struct LowerBound {
  // Primal value: max_pi sum_s a_{pi,s} / lambda_s at the returned lambda.
  // tau = low_a * lambda is feasible for the program above.
  double low_a = 0.0;
  // Dual value (sum_s sqrt(b_s(w)))^2 for the best constraint mixture w.
  // rho_star <= true optimum <= low_a.
  double rho_star = 0.0;
  Vector allocation;
  Vector tau;
  Vector constraint_weights;
  int iterations = 0;
  bool converged = false;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, LowerBound best)
      : Error(ErrorKind::kConvergence, message), best_(std::move(best)) {}
  const LowerBound& best() const { return best_; }

 private:
  LowerBound best_;
};

// Multiplicative-weights solve of the game form. Stops once
// low_a - rho_star <= tol * rho_star; throws ConvergenceError otherwise.
LowerBound ComputeLowerBound(const ActionSet& actions,
                             std::span<const double> mu,
                             const LowerBoundOptions& options = {});

// Program with the per-constraint sum replaced by a max; its optimum is H.
double RelaxedLowerBound(const ActionSet& actions, std::span<const double> mu);

// (1/16) H log(1 / (4 delta)).
double ExplicitSampleComplexityBound(double hardness, double delta);

struct HardnessReport {
  Action best_action;
  std::vector<Action> gap_actions;
  Vector g_gaps;
  double H = 0.0;
  // +infinity where no action differs from pi* at s.
  Vector cpe_gaps;
  double H_prime = 0.0;
  Vector U;
  Vector V;
  double H_N = 0.0;
  double H_R = 0.0;
  double width = 0.0;
  std::vector<std::pair<Action, double>> pairwise_gaps;
  std::optional<LowerBound> lower_bound;
};

// Everything except the allocation lower bound. Requires |A| >= 2 and a
// defined G-gap at every arm.
HardnessReport ComputeHardnessMeasures(const ActionSet& actions,
                                       std::span<const double> mu);

// ComputeHardnessMeasures plus ComputeLowerBound.
HardnessReport AnalyzeHardness(const ActionSet& actions,
                               std::span<const double> mu,
                               const LowerBoundOptions& options = {});

nlohmann::json ToJson(const HardnessReport& report);

}  // namespace cpe

#endif  // CPE_HARDNESS_HPP_
