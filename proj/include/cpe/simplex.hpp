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

// Dense two-phase primal simplex on small linear programs
//
//   maximize   c . x
//   subject to a_i . x  (<=, =, >=)  b_i,   x >= 0.
//
// Pivoting follows Bland's rule (lowest entering index among improving
// columns, lowest basic variable index among tied ratios), so the method
// never cycles and the returned basic solution is a deterministic function
// of the input. Solutions are basic, i.e. vertices of the feasible region.

#ifndef CPE_SIMPLEX_HPP_
#define CPE_SIMPLEX_HPP_

#include <cstddef>
#include <vector>

#include "cpe/model.hpp"

namespace cpe {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearProgram {
  std::vector<Vector> rows;
  Vector rhs;
  std::vector<RowSense> senses;
  Vector objective;

  std::size_t num_vars() const { return objective.size(); }
  void AddRow(Vector row, RowSense sense, double b) {
    rows.push_back(std::move(row));
    senses.push_back(sense);
    rhs.push_back(b);
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  double objective = 0.0;
  int pivots = 0;
};

struct SimplexOptions {
  // Pivot elements and reduced costs below this magnitude are zero.
  double eps = 1e-10;
  // Phase-one residual above which the program is declared infeasible.
  double feasibility_tol = 1e-9;
  int max_pivots = 1'000'000;
};

LpSolution SolveLinearProgram(const LinearProgram& lp,
                              const SimplexOptions& options = {});

}  // namespace cpe

#endif  // CPE_SIMPLEX_HPP_
