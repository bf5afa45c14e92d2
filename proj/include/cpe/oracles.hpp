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

// Offline maximization oracles: Solve(problem, nu) returns
// argmax_{pi in A} nu . pi for the action set A implied by the problem.
//
// Supported feasible regions:
//   Knapsack    nonnegative integer counts pi with sum_s w_s pi_s <= W
//               (unbounded knapsack, pseudo-polynomial DP).
//   Production  the polytope {pi >= 0 : M pi <= v_max}; Solve returns a
//               vertex found by Bland-rule simplex.
//   DagPath     edge-indicator vectors of source-to-sink paths in a DAG,
//               one arm per edge (longest path; negate costs for shortest).
//   TopK        0/1 vectors with exactly k ones.
//   Explicit    an enumerated action set.
//
// Ties are broken deterministically: the knapsack DP prefers the lower item
// index, the simplex follows Bland's rule, TopK prefers lower indices on
// equal weights and the explicit oracle returns the lexicographically
// smallest maximizer.

#ifndef CPE_ORACLES_HPP_
#define CPE_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cpe/model.hpp"

namespace cpe {

struct KnapsackProblem {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
};

struct ProductionProblem {
  // requirements[i][s]: amount of material i used by one unit of product s.
  std::vector<Vector> requirements;
  Vector limits;
};

struct DagPathProblem {
  std::size_t vertex_count = 0;
  // Edge e (arm e) goes from edges[e].first to edges[e].second.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t source = 0;
  std::size_t sink = 0;
};

struct TopKProblem {
  std::size_t d = 0;
  std::size_t k = 0;
};

struct ExplicitProblem {
  ActionSet actions;
};

class OracleProblem {
 public:
  using Variant = std::variant<KnapsackProblem, ProductionProblem,
                               DagPathProblem, TopKProblem, ExplicitProblem>;

  // Validates on construction; throws cpe::Error(kValidation).
  OracleProblem(Variant problem);  // NOLINT: implicit by design of variants

  std::size_t dim() const { return dim_; }
  const Variant& variant() const { return problem_; }
  const char* type_name() const;

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&problem_);
  }

  // Knapsack only: entry j * d + i is floor(w_j / w_i) when i != j and
  // w_i <= w_j, else 0. Empty for other problem types.
  const Vector& knapsack_multiples() const { return knapsack_multiples_; }

 private:
  Variant problem_;
  std::size_t dim_ = 0;
  Vector knapsack_multiples_;
};

Action Solve(const OracleProblem& problem, std::span<const double> nu);

// Upper bound on log|A|, used by the sampling schedule when A is implicit.
double LogActionCountBound(const OracleProblem& problem);

// Extreme points of the convex hull of the problem's feasible set. Throws
// kBudget when more than `limit` candidate points (or bases, for Production)
// would have to be examined.
ActionSet EnumerateActionSet(const OracleProblem& problem, std::size_t limit);

// Every integer point of a knapsack's feasible region.
std::vector<Action> EnumerateKnapsackPoints(const KnapsackProblem& problem,
                                            std::size_t limit);

// Points of `points` that are not convex combinations of the others,
// decided by a phase-one simplex feasibility solve per point. Input order is
// preserved; duplicates are collapsed.
ActionSet ExtremePoints(const std::vector<Action>& points);

}  // namespace cpe

#endif  // CPE_ORACLES_HPP_
