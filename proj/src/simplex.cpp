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

#include "cpe/simplex.hpp"

#include <cmath>
#include <limits>

#include "cpe/error.hpp"

namespace cpe {

namespace {

// Tableau in canonical form with respect to `basis`. Column layout:
// [structural | slack/surplus | artificial], then the rhs is kept apart.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), cells_(rows * cols, 0.0), rhs_(rows, 0.0),
        basis_(rows, 0), reduced_(cols, 0.0) {}

  std::size_t rows() const { return rhs_.size(); }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }
  double& rhs(std::size_t r) { return rhs_[r]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t basis(std::size_t r) const { return basis_[r]; }

  // Recomputes reduced profits c_j - c_B . column_j and the objective value.
  void Price(const Vector& costs) {
    value_ = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = costs[j];
    for (std::size_t r = 0; r < rows(); ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      value_ += cb * rhs_[r];
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * at(r, j);
    }
  }

  void Pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t j = 0; j < cols_; ++j) at(pr, j) *= inv;
    rhs_[pr] *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) at(r, j) -= f * at(pr, j);
      rhs_[r] -= f * rhs_[pr];
      at(r, pc) = 0.0;
    }
    const double f = reduced_[pc];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= f * at(pr, j);
      value_ += f * rhs_[pr];
      reduced_[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Runs Bland-rule pivots until optimal or unbounded. Columns with
  // allowed[j] == false never enter.
  LpStatus Optimize(const std::vector<bool>& allowed,
                    const SimplexOptions& options, int& pivots) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && reduced_[j] > options.eps) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return LpStatus::kOptimal;

      std::size_t leave = rows();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows(); ++r) {
        const double a = at(r, enter);
        if (a <= options.eps) continue;
        const double ratio = rhs_[r] / a;
        if (ratio < best_ratio - options.eps ||
            (std::abs(ratio - best_ratio) <= options.eps &&
             basis_[r] < basis_[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave == rows()) return LpStatus::kUnbounded;
      Pivot(leave, enter);
      if (++pivots > options.max_pivots) {
        Fail(ErrorKind::kConvergence, "simplex pivot limit exceeded");
      }
    }
  }

  double value() const { return value_; }

 private:
  std::size_t cols_;
  std::vector<double> cells_;
  Vector rhs_;
  std::vector<std::size_t> basis_;
  Vector reduced_;
  double value_ = 0.0;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp,
                              const SimplexOptions& options) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.rows.size();
  Require(lp.rhs.size() == m && lp.senses.size() == m,
          "linear program rows, senses and rhs disagree in length");
  for (const auto& row : lp.rows) {
    Require(row.size() == n, "linear program row has wrong length");
  }

  // Flip rows so every rhs is nonnegative, then count auxiliary columns.
  std::vector<RowSense> senses = lp.senses;
  std::vector<double> sign(m, 1.0);
  std::size_t slack_count = 0, artificial_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0.0) {
      sign[i] = -1.0;
      if (senses[i] == RowSense::kLessEqual) {
        senses[i] = RowSense::kGreaterEqual;
      } else if (senses[i] == RowSense::kGreaterEqual) {
        senses[i] = RowSense::kLessEqual;
      }
    }
    if (senses[i] != RowSense::kEqual) ++slack_count;
    if (senses[i] != RowSense::kLessEqual) ++artificial_count;
  }

  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slack_count;
  const std::size_t cols = first_artificial + artificial_count;
  Tableau tab(m, cols);
  std::size_t next_slack = first_slack, next_artificial = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign[i] * lp.rows[i][j];
    tab.rhs(i) = sign[i] * lp.rhs[i];
    switch (senses[i]) {
      case RowSense::kLessEqual:
        tab.at(i, next_slack) = 1.0;
        tab.basis(i) = next_slack++;
        break;
      case RowSense::kGreaterEqual:
        tab.at(i, next_slack++) = -1.0;
        tab.at(i, next_artificial) = 1.0;
        tab.basis(i) = next_artificial++;
        break;
      case RowSense::kEqual:
        tab.at(i, next_artificial) = 1.0;
        tab.basis(i) = next_artificial++;
        break;
    }
  }

  LpSolution solution;
  std::vector<bool> allowed(cols, true);

  if (artificial_count > 0) {
    Vector phase_one(cols, 0.0);
    for (std::size_t j = first_artificial; j < cols; ++j) phase_one[j] = -1.0;
    tab.Price(phase_one);
    tab.Optimize(allowed, options, solution.pivots);
    if (tab.value() < -options.feasibility_tol) {
      solution.status = LpStatus::kInfeasible;
      return solution;
    }
    // Drive remaining (zero-level) artificials out of the basis. A row with
    // no usable structural entry is redundant and keeps its artificial.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis(r) < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(tab.at(r, j)) > options.eps) {
          tab.Pivot(r, j);
          break;
        }
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  Vector costs(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) costs[j] = lp.objective[j];
  tab.Price(costs);
  if (tab.Optimize(allowed, options, solution.pivots) == LpStatus::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis(r) < n) solution.x[tab.basis(r)] = tab.rhs(r);
  }
  for (double& v : solution.x) {
    if (std::abs(v) < options.eps) v = 0.0;
  }
  solution.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    solution.objective += lp.objective[j] * solution.x[j];
  }
  return solution;
}

}  // namespace cpe
