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

#include "cpe/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cpe/error.hpp"
#include "cpe/simplex.hpp"

namespace cpe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Vertices in topological order (Kahn's algorithm, smallest index first).
// Returns an empty vector if the graph has a cycle.
std::vector<std::size_t> TopologicalOrder(const DagPathProblem& g) {
  std::vector<std::size_t> indegree(g.vertex_count, 0);
  for (const auto& [u, v] : g.edges) ++indegree[v];
  std::vector<std::size_t> order, ready;
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    const std::size_t v = *it;
    ready.erase(it);
    order.push_back(v);
    for (const auto& [a, b] : g.edges) {
      if (a == v && --indegree[b] == 0) ready.push_back(b);
    }
  }
  if (order.size() != g.vertex_count) return {};
  return order;
}

// Number of source-to-sink paths, as a floating value.
long double CountPaths(const DagPathProblem& g,
                       const std::vector<std::size_t>& order) {
  std::vector<long double> count(g.vertex_count, 0.0L);
  count[g.source] = 1.0L;
  for (std::size_t v : order) {
    if (count[v] == 0.0L) continue;
    for (const auto& [a, b] : g.edges) {
      if (a == v) count[b] += count[v];
    }
  }
  return count[g.sink];
}

void ValidateKnapsack(const KnapsackProblem& p) {
  Require(!p.weights.empty(), "knapsack needs at least one item");
  for (auto w : p.weights) Require(w >= 1, "knapsack weights must be >= 1");
  Require(p.capacity >= 0, "knapsack capacity must be >= 0");
}

void ValidateProduction(const ProductionProblem& p) {
  Require(!p.requirements.empty(), "production problem needs >= 1 material");
  Require(p.limits.size() == p.requirements.size(),
          "production limits must have one entry per material");
  const std::size_t d = p.requirements.front().size();
  Require(d >= 1, "production problem needs >= 1 product");
  for (const auto& row : p.requirements) {
    Require(row.size() == d, "production requirement rows differ in length");
    for (double x : row) {
      Require(std::isfinite(x) && x >= 0.0,
              "production requirements must be finite and nonnegative");
    }
  }
  for (double v : p.limits) {
    Require(std::isfinite(v) && v >= 0.0,
            "production limits must be finite and nonnegative");
  }
  for (std::size_t s = 0; s < d; ++s) {
    bool nonzero = false;
    for (const auto& row : p.requirements) nonzero |= row[s] > 0.0;
    Require(nonzero, "production column " + std::to_string(s) +
                         " is all zero; the LP would be unbounded");
  }
}

void ValidateDag(const DagPathProblem& g) {
  Require(g.vertex_count >= 2, "dag needs at least two vertices");
  Require(!g.edges.empty(), "dag needs at least one edge");
  Require(g.source < g.vertex_count && g.sink < g.vertex_count,
          "dag source/sink out of range");
  Require(g.source != g.sink, "dag source and sink must differ");
  for (const auto& [u, v] : g.edges) {
    Require(u < g.vertex_count && v < g.vertex_count,
            "dag edge endpoint out of range");
    Require(u != v, "dag edges must not be self-loops");
  }
  const auto order = TopologicalOrder(g);
  Require(!order.empty(), "graph has a cycle");
  Require(CountPaths(g, order) > 0.0L, "no path from source to sink");
}

Action SolveKnapsack(const KnapsackProblem& p, const Vector& multiples,
                     std::span<const double> nu) {
  const std::size_t d = p.weights.size();
  const auto cap = static_cast<std::size_t>(p.capacity);
  // Candidate items in increasing weight order. Items with nonpositive value
  // never strictly improve on best[c - 1]. Item j is also dropped when
  // floor(w_j / w_i) copies of some item i are strictly more valuable: j then
  // belongs to no optimal packing at any capacity.
  thread_local std::vector<std::size_t> weight;
  thread_local Vector value;
  thread_local std::vector<int> index;
  weight.clear();
  value.clear();
  index.clear();
  for (std::size_t j = 0; j < d; ++j) {
    const std::int64_t wj = p.weights[j];
    if (!(nu[j] > 0.0) || wj > p.capacity) continue;
    const double* row = multiples.data() + j * d;
    bool dominated = false;
    for (std::size_t i = 0; i < d; ++i) dominated |= row[i] * nu[i] > nu[j];
    if (dominated) continue;
    // Stable insertion by weight.
    std::size_t pos = weight.size();
    weight.push_back(0);
    value.push_back(0.0);
    index.push_back(0);
    while (pos > 0 && weight[pos - 1] > static_cast<std::size_t>(wj)) {
      weight[pos] = weight[pos - 1];
      value[pos] = value[pos - 1];
      index[pos] = index[pos - 1];
      --pos;
    }
    weight[pos] = static_cast<std::size_t>(wj);
    value[pos] = nu[j];
    index[pos] = static_cast<int>(j);
  }
  const std::size_t n = weight.size();

  thread_local Vector best_storage;
  thread_local std::vector<int> choice_storage;
  thread_local Vector candidate_storage;
  best_storage.resize(cap + 1);
  choice_storage.resize(cap + 1);
  candidate_storage.resize(n + 1);
  double* best = best_storage.data();
  int* choice = choice_storage.data();
  double* candidate = candidate_storage.data();
  const std::size_t* w = weight.data();
  const double* v = value.data();
  const int* idx = index.data();

  // best[c]: maximum value with total weight <= c. choice[c] is the lowest
  // index item whose addition attains best[c], or -1 if capacity c - 1
  // already does.
  constexpr int kNone = std::numeric_limits<int>::max();
  best[0] = 0.0;
  choice[0] = -1;
  std::size_t usable = 0;
  for (std::size_t c = 1; c <= cap; ++c) {
    while (usable < n && w[usable] <= c) ++usable;
    const double previous = best[c - 1];
    double m0 = previous, m1 = previous;
    std::size_t i = 0;
    for (; i + 1 < usable; i += 2) {
      candidate[i] = best[c - w[i]] + v[i];
      candidate[i + 1] = best[c - w[i + 1]] + v[i + 1];
      m0 = std::max(m0, candidate[i]);
      m1 = std::max(m1, candidate[i + 1]);
    }
    if (i < usable) {
      candidate[i] = best[c - w[i]] + v[i];
      m0 = std::max(m0, candidate[i]);
    }
    const double top = std::max(m0, m1);
    int item = kNone;
    for (std::size_t k = 0; k < usable; ++k) {
      item = (candidate[k] == top && idx[k] < item) ? idx[k] : item;
    }
    best[c] = top;
    choice[c] = (top > previous && item != kNone) ? item : -1;
  }
  Vector counts(d, 0.0);
  std::size_t c = cap;
  while (c > 0) {
    const int item = choice[c];
    if (item < 0) {
      --c;
    } else {
      counts[item] += 1.0;
      c -= static_cast<std::size_t>(p.weights[item]);
    }
  }
  return Action(std::move(counts));
}

Action SolveProduction(const ProductionProblem& p, std::span<const double> nu) {
  LinearProgram lp;
  lp.objective.assign(nu.begin(), nu.end());
  for (std::size_t i = 0; i < p.requirements.size(); ++i) {
    lp.AddRow(p.requirements[i], RowSense::kLessEqual, p.limits[i]);
  }
  const LpSolution sol = SolveLinearProgram(lp);
  if (sol.status == LpStatus::kUnbounded) {
    Fail(ErrorKind::kUnbounded, "production LP is unbounded");
  }
  if (sol.status != LpStatus::kOptimal) {
    Fail(ErrorKind::kValidation, "production LP is infeasible");
  }
  return Action(sol.x);
}

Action SolveDag(const DagPathProblem& g, std::span<const double> nu) {
  const auto order = TopologicalOrder(g);
  std::vector<double> best(g.vertex_count, kNegInf);
  std::vector<int> via(g.vertex_count, -1);
  best[g.source] = 0.0;
  for (std::size_t v : order) {
    if (best[v] == kNegInf) continue;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [a, b] = g.edges[e];
      if (a != v) continue;
      const double candidate = best[v] + nu[e];
      if (candidate > best[b]) {
        best[b] = candidate;
        via[b] = static_cast<int>(e);
      }
    }
  }
  Vector indicator(g.edges.size(), 0.0);
  for (std::size_t v = g.sink; v != g.source;) {
    const int e = via[v];
    indicator[e] = 1.0;
    v = g.edges[e].first;
  }
  return Action(std::move(indicator));
}

Action SolveTopK(const TopKProblem& p, std::span<const double> nu) {
  std::vector<std::size_t> idx(p.d);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return nu[a] > nu[b]; });
  Vector pick(p.d, 0.0);
  for (std::size_t i = 0; i < p.k; ++i) pick[idx[i]] = 1.0;
  return Action(std::move(pick));
}

Action SolveExplicit(const ExplicitProblem& p, std::span<const double> nu) {
  const Action* best = nullptr;
  double best_value = kNegInf;
  for (const auto& a : p.actions) {
    const double v = a.Dot(nu);
    if (best == nullptr || v > best_value || (v == best_value && a < *best)) {
      best = &a;
      best_value = v;
    }
  }
  return *best;
}

double LogBinomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// Solves the square system a x = b in place by Gaussian elimination with
// partial pivoting. Returns false when the matrix is numerically singular.
bool SolveSquare(std::vector<Vector>& a, Vector& b, Vector& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return true;
}

// Vertices of {pi >= 0 : M pi <= v} by enumerating every choice of d tight
// constraints among the m + d available.
ActionSet ProductionVertices(const ProductionProblem& p, std::size_t limit) {
  const std::size_t m = p.requirements.size();
  const std::size_t d = p.requirements.front().size();
  const std::size_t total = m + d;
  if (LogBinomial(total, d) > std::log(static_cast<double>(limit)) + 1e-9) {
    Fail(ErrorKind::kBudget, "production vertex enumeration needs more than " +
                                 std::to_string(limit) + " bases");
  }
  // Constraint c < m is row c of M; constraint m + s is pi_s >= 0.
  auto row_of = [&](std::size_t c) {
    if (c < m) return p.requirements[c];
    Vector e(d, 0.0);
    e[c - m] = 1.0;
    return e;
  };
  constexpr double kTol = 1e-9;
  std::vector<Action> vertices;
  std::vector<std::size_t> pick(d);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<Vector> a;
    Vector b, x;
    for (std::size_t c : pick) {
      a.push_back(row_of(c));
      b.push_back(c < m ? p.limits[c] : 0.0);
    }
    if (SolveSquare(a, b, x)) {
      bool feasible = true;
      for (double& xi : x) {
        if (xi < -kTol) feasible = false;
        if (std::abs(xi) < kTol) xi = 0.0;
      }
      for (std::size_t i = 0; feasible && i < m; ++i) {
        double lhs = 0.0;
        for (std::size_t s = 0; s < d; ++s) lhs += p.requirements[i][s] * x[s];
        if (lhs > p.limits[i] + kTol * std::max(1.0, p.limits[i])) {
          feasible = false;
        }
      }
      if (feasible) {
        Action v(x);
        bool seen = false;
        for (const auto& u : vertices) seen |= ApproxEqual(u, v, 1e-7);
        if (!seen) vertices.push_back(std::move(v));
      }
    }
    // Next d-combination of {0, ..., total - 1} in lexicographic order.
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == total - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return ActionSet(std::move(vertices));
}

std::vector<Action> EnumeratePaths(const DagPathProblem& g, std::size_t limit) {
  std::vector<Action> paths;
  Vector indicator(g.edges.size(), 0.0);
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    if (v == g.sink) {
      if (paths.size() >= limit) {
        Fail(ErrorKind::kBudget, "more than " + std::to_string(limit) +
                                     " source-to-sink paths");
      }
      paths.emplace_back(indicator);
      return;
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].first != v) continue;
      indicator[e] = 1.0;
      self(self, g.edges[e].second);
      indicator[e] = 0.0;
    }
  };
  dfs(dfs, g.source);
  return paths;
}

std::vector<Action> EnumerateTopK(const TopKProblem& p, std::size_t limit) {
  if (LogBinomial(p.d, p.k) > std::log(static_cast<double>(limit)) + 1e-9) {
    Fail(ErrorKind::kBudget, "top-k action set exceeds " +
                                 std::to_string(limit) + " actions");
  }
  std::vector<Action> out;
  std::vector<std::size_t> pick(p.k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Vector v(p.d, 0.0);
    for (std::size_t s : pick) v[s] = 1.0;
    out.emplace_back(std::move(v));
    std::size_t i = p.k;
    while (i > 0 && pick[i - 1] == p.d - p.k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < p.k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace

OracleProblem::OracleProblem(Variant problem) : problem_(std::move(problem)) {
  std::visit(
      Overloaded{
          [&](const KnapsackProblem& p) {
            ValidateKnapsack(p);
            dim_ = p.weights.size();
            knapsack_multiples_.assign(dim_ * dim_, 0.0);
            for (std::size_t j = 0; j < dim_; ++j) {
              for (std::size_t i = 0; i < dim_; ++i) {
                if (i != j && p.weights[i] <= p.weights[j]) {
                  knapsack_multiples_[j * dim_ + i] =
                      static_cast<double>(p.weights[j] / p.weights[i]);
                }
              }
            }
          },
          [&](const ProductionProblem& p) {
            ValidateProduction(p);
            dim_ = p.requirements.front().size();
          },
          [&](const DagPathProblem& p) {
            ValidateDag(p);
            dim_ = p.edges.size();
          },
          [&](const TopKProblem& p) {
            Require(p.d >= 1 && p.k >= 1 && p.k <= p.d,
                    "top-k needs 1 <= k <= d");
            dim_ = p.d;
          },
          [&](const ExplicitProblem& p) {
            Require(!p.actions.empty(), "explicit action set is empty");
            Require(p.actions.dim() >= 1, "explicit actions need >= 1 arm");
            dim_ = p.actions.dim();
          },
      },
      problem_);
}

const char* OracleProblem::type_name() const {
  return std::visit(Overloaded{
                        [](const KnapsackProblem&) { return "knapsack"; },
                        [](const ProductionProblem&) { return "production"; },
                        [](const DagPathProblem&) { return "dag_path"; },
                        [](const TopKProblem&) { return "topk"; },
                        [](const ExplicitProblem&) { return "explicit"; },
                    },
                    problem_);
}

Action Solve(const OracleProblem& problem, std::span<const double> nu) {
  if (nu.size() != problem.dim()) {
    Fail(ErrorKind::kValidation,
         "query vector has length " + std::to_string(nu.size()) +
             ", problem has " + std::to_string(problem.dim()) + " arms");
  }
  for (double x : nu) Require(std::isfinite(x), "query vector must be finite");
  return std::visit(
      [&](const auto& p) -> Action {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KnapsackProblem>) {
          return SolveKnapsack(p, problem.knapsack_multiples(), nu);
        } else if constexpr (std::is_same_v<T, ProductionProblem>) {
          return SolveProduction(p, nu);
        } else if constexpr (std::is_same_v<T, DagPathProblem>) {
          return SolveDag(p, nu);
        } else if constexpr (std::is_same_v<T, TopKProblem>) {
          return SolveTopK(p, nu);
        } else {
          return SolveExplicit(p, nu);
        }
      },
      problem.variant());
}

double LogActionCountBound(const OracleProblem& problem) {
  return std::visit(
      Overloaded{
          [](const KnapsackProblem& p) {
            double sum = 0.0;
            for (auto w : p.weights) {
              sum += std::log(static_cast<double>(p.capacity / w + 1));
            }
            return sum;
          },
          [](const ProductionProblem& p) {
            // A vertex is fixed by d tight constraints out of m + d.
            const std::size_t d = p.requirements.front().size();
            return LogBinomial(p.requirements.size() + d, d);
          },
          [](const DagPathProblem& p) {
            return static_cast<double>(
                std::log(CountPaths(p, TopologicalOrder(p))));
          },
          [](const TopKProblem& p) { return LogBinomial(p.d, p.k); },
          [](const ExplicitProblem& p) {
            return std::log(static_cast<double>(p.actions.size()));
          },
      },
      problem.variant());
}

std::vector<Action> EnumerateKnapsackPoints(const KnapsackProblem& p,
                                            std::size_t limit) {
  std::vector<Action> points;
  Vector counts(p.weights.size(), 0.0);
  auto dfs = [&](auto&& self, std::size_t s, std::int64_t room) -> void {
    if (s == p.weights.size()) {
      if (points.size() >= limit) {
        Fail(ErrorKind::kBudget, "knapsack has more than " +
                                     std::to_string(limit) + " feasible points");
      }
      points.emplace_back(counts);
      return;
    }
    for (std::int64_t c = 0; c * p.weights[s] <= room; ++c) {
      counts[s] = static_cast<double>(c);
      self(self, s + 1, room - c * p.weights[s]);
    }
    counts[s] = 0.0;
  };
  dfs(dfs, 0, p.capacity);
  return points;
}

ActionSet ExtremePoints(const std::vector<Action>& input) {
  const ActionSet unique(input);
  const std::size_t n = unique.size();
  if (n <= 2) return unique;
  const std::size_t d = unique.dim();
  std::vector<Action> extreme;
  for (std::size_t i = 0; i < n; ++i) {
    // Is point i a convex combination of the others?
    LinearProgram lp;
    lp.objective.assign(n - 1, 0.0);
    for (std::size_t s = 0; s < d; ++s) {
      Vector row;
      row.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) row.push_back(unique[j][s]);
      }
      lp.AddRow(std::move(row), RowSense::kEqual, unique[i][s]);
    }
    lp.AddRow(Vector(n - 1, 1.0), RowSense::kEqual, 1.0);
    if (SolveLinearProgram(lp).status == LpStatus::kInfeasible) {
      extreme.push_back(unique[i]);
    }
  }
  return ActionSet(std::move(extreme));
}

ActionSet EnumerateActionSet(const OracleProblem& problem, std::size_t limit) {
  Require(limit >= 1, "enumeration limit must be positive");
  return std::visit(
      Overloaded{
          [&](const KnapsackProblem& p) {
            return ExtremePoints(EnumerateKnapsackPoints(p, limit));
          },
          [&](const ProductionProblem& p) {
            return ProductionVertices(p, limit);
          },
          // Distinct 0/1 vectors are vertices of the unit cube, hence
          // extreme in any subset.
          [&](const DagPathProblem& p) {
            return ActionSet(EnumeratePaths(p, limit));
          },
          [&](const TopKProblem& p) { return ActionSet(EnumerateTopK(p, limit)); },
          [&](const ExplicitProblem& p) {
            if (p.actions.size() > limit) {
              Fail(ErrorKind::kBudget, "explicit action set exceeds limit");
            }
            return ExtremePoints(p.actions.actions());
          },
      },
      problem.variant());
}

}  // namespace cpe
