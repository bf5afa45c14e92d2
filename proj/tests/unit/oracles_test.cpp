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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cpe/error.hpp"
#include "reference.hpp"

namespace cpe {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kLogic;
}

TEST(SolveTest, KnapsackExample) {
  OracleProblem p(KnapsackProblem{{1, 2}, 2});
  const Vector nu{1.0, 1.5};
  const Action a = Solve(p, nu);
  EXPECT_EQ(a, (Action{2, 0}));
  EXPECT_EQ(a.Dot(nu), 2.0);
}

TEST(SolveTest, KnapsackNegativeValuesGiveEmptyKnapsack) {
  OracleProblem p(KnapsackProblem{{3, 1, 4}, 9});
  EXPECT_EQ(Solve(p, Vector{-1.0, -0.5, -2.0}), (Action{0, 0, 0}));
}

TEST(SolveTest, KnapsackPrefersLowerIndexOnTies) {
  OracleProblem p(KnapsackProblem{{1, 1}, 3});
  EXPECT_EQ(Solve(p, Vector{1.0, 1.0}), (Action{3, 0}));
}

TEST(SolveTest, KnapsackZeroCapacity) {
  OracleProblem p(KnapsackProblem{{1, 2}, 0});
  EXPECT_EQ(Solve(p, Vector{1.0, 1.0}), (Action{0, 0}));
}

TEST(SolveTest, ProductionExample) {
  OracleProblem p(ProductionProblem{{{1.0, 2.0}}, {4.0}});
  const Vector nu{1.0, 3.0};
  const Action a = Solve(p, nu);
  EXPECT_NEAR(a[0], 0.0, 1e-12);
  EXPECT_NEAR(a[1], 2.0, 1e-12);
  EXPECT_NEAR(a.Dot(nu), 6.0, 1e-12);
}

TEST(SolveTest, TopKExample) {
  OracleProblem p(TopKProblem{3, 1});
  EXPECT_EQ(Solve(p, Vector{0.3, 0.2, 0.1}), (Action{1, 0, 0}));
  EXPECT_EQ(Solve(OracleProblem(TopKProblem{3, 2}), Vector{0.1, 0.1, 0.1}),
            (Action{1, 1, 0}));
}

TEST(SolveTest, ExplicitExample) {
  OracleProblem p(ExplicitProblem{ActionSet({Action{100, 0}, Action{0, 100}})});
  EXPECT_EQ(Solve(p, Vector{0.011, 0.01}), (Action{100, 0}));
}

TEST(SolveTest, ExplicitTieReturnsLexicographicallySmallest) {
  OracleProblem p(ExplicitProblem{ActionSet({Action{1, 0}, Action{0, 1}})});
  EXPECT_EQ(Solve(p, Vector{1.0, 1.0}), (Action{0, 1}));
}

TEST(SolveTest, DagLongestPath) {
  // 0 -> 1 -> 3, 0 -> 2 -> 3, 0 -> 3.
  DagPathProblem g{4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}}, 0, 3};
  OracleProblem p(g);
  EXPECT_EQ(Solve(p, Vector{1, 1, 2, 1, 2.5}), (Action{0, 0, 1, 1, 0}));
  // Shortest path by negated costs.
  EXPECT_EQ(Solve(p, Vector{-1, -1, -2, -1, -2.5}), (Action{1, 1, 0, 0, 0}));
}

TEST(SolveTest, ValidationErrors) {
  EXPECT_EQ(KindOf([] { OracleProblem(KnapsackProblem{{0, 1}, 2}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { OracleProblem(KnapsackProblem{{1}, -1}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { OracleProblem(ProductionProblem{{{1.0, 0.0}}, {1.0}}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { OracleProblem(TopKProblem{3, 4}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { OracleProblem(DagPathProblem{3, {{0, 1}, {1, 0}}, 0, 2}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { OracleProblem(DagPathProblem{3, {{0, 1}}, 0, 2}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { OracleProblem(ExplicitProblem{}); }),
            ErrorKind::kValidation);
  OracleProblem p(TopKProblem{2, 1});
  EXPECT_EQ(KindOf([&] { Solve(p, Vector{1.0}); }), ErrorKind::kValidation);
  EXPECT_EQ(KindOf([&] { Solve(p, Vector{1.0, INFINITY}); }),
            ErrorKind::kValidation);
}

TEST(LogActionCountBoundTest, Examples) {
  EXPECT_NEAR(LogActionCountBound(OracleProblem(ExplicitProblem{
                  ActionSet({Action{1, 0}, Action{0, 1}})})),
              std::log(2.0), 1e-12);
  EXPECT_NEAR(LogActionCountBound(OracleProblem(TopKProblem{4, 2})),
              std::log(6.0), 1e-12);
  EXPECT_NEAR(LogActionCountBound(OracleProblem(KnapsackProblem{{1, 2}, 2})),
              std::log(6.0), 1e-12);
}

TEST(EnumerateActionSetTest, TopKUnitVectors) {
  const ActionSet a = EnumerateActionSet(OracleProblem(TopKProblem{3, 1}), 100);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.Contains(Action{1, 0, 0}));
  EXPECT_TRUE(a.Contains(Action{0, 1, 0}));
  EXPECT_TRUE(a.Contains(Action{0, 0, 1}));
}

TEST(EnumerateActionSetTest, KnapsackExtremePoints) {
  const ActionSet a =
      EnumerateActionSet(OracleProblem(KnapsackProblem{{1, 2}, 2}), 100);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.Contains(Action{0, 0}));
  EXPECT_TRUE(a.Contains(Action{2, 0}));
  EXPECT_TRUE(a.Contains(Action{0, 1}));
  EXPECT_FALSE(a.Contains(Action{1, 0}));
}

TEST(EnumerateActionSetTest, ExplicitDropsInteriorPoints) {
  const ActionSet a = EnumerateActionSet(
      OracleProblem(ExplicitProblem{ActionSet(
          {Action{0, 0}, Action{2, 0}, Action{0, 2}, Action{0.5, 0.5}, Action{1, 1}})}),
      100);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_FALSE(a.Contains(Action{0.5, 0.5}));
  EXPECT_FALSE(a.Contains(Action{1, 1}));
}

TEST(EnumerateActionSetTest, ProductionVertices) {
  const ActionSet a = EnumerateActionSet(
      OracleProblem(ProductionProblem{{{1.0, 2.0}}, {4.0}}), 100);
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.Contains(Action{0, 0}));
  EXPECT_TRUE(a.Contains(Action{4, 0}));
  EXPECT_TRUE(a.Contains(Action{0, 2}));
}

TEST(EnumerateActionSetTest, BudgetError) {
  EXPECT_EQ(KindOf([] {
              EnumerateActionSet(OracleProblem(KnapsackProblem{{1, 1, 1}, 30}), 10);
            }),
            ErrorKind::kBudget);
  EXPECT_EQ(KindOf([] {
              EnumerateActionSet(OracleProblem(TopKProblem{10, 5}), 10);
            }),
            ErrorKind::kBudget);
}

// Random small instances of every oracle type checked against brute force.
class OracleProperties : public ::testing::TestWithParam<int> {};

OracleProblem RandomProblem(int type, std::mt19937_64& gen,
                            std::vector<reference::Vec>& points) {
  std::uniform_int_distribution<int> small(1, 4);
  switch (type) {
    case 0: {
      const int d = small(gen);
      std::uniform_int_distribution<std::int64_t> w(1, 6);
      KnapsackProblem p;
      for (int s = 0; s < d; ++s) p.weights.push_back(w(gen));
      p.capacity = std::uniform_int_distribution<std::int64_t>(0, 12)(gen);
      points = reference::KnapsackPoints(p.weights, p.capacity);
      return OracleProblem(p);
    }
    case 1: {
      const int d = small(gen), m = 1 + small(gen) % 3;
      ProductionProblem p;
      p.requirements.assign(m, Vector(d));
      for (auto& row : p.requirements) {
        for (auto& x : row) x = small(gen);
      }
      p.limits.assign(m, 10.0 + small(gen));
      points = reference::PolytopeVertices(p.requirements, p.limits);
      return OracleProblem(p);
    }
    case 2: {
      const std::size_t n = 3 + small(gen) % 3;
      DagPathProblem g;
      g.vertex_count = n;
      g.source = 0;
      g.sink = n - 1;
      for (std::size_t u = 0; u + 1 < n; ++u) g.edges.emplace_back(u, u + 1);
      std::bernoulli_distribution coin(0.4);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 2; v < n; ++v) {
          if (coin(gen)) g.edges.emplace_back(u, v);
        }
      }
      points = reference::DagPaths(n, g.edges, g.source, g.sink);
      return OracleProblem(g);
    }
    case 3: {
      const std::size_t d = 1 + small(gen) + small(gen) / 2;
      const std::size_t k = 1 + gen() % d;
      points = reference::TopKSets(d, k);
      return OracleProblem(TopKProblem{d, k});
    }
    default: {
      const int d = small(gen), n = 1 + small(gen) + small(gen);
      std::vector<Action> acts;
      std::uniform_int_distribution<int> coord(-3, 3);
      for (int i = 0; i < n; ++i) {
        Vector x(d);
        for (auto& c : x) c = coord(gen);
        acts.emplace_back(x);
      }
      ActionSet set(acts);
      points.clear();
      for (const auto& a : set) points.push_back(a.coords());
      return OracleProblem(ExplicitProblem{set});
    }
  }
}

TEST_P(OracleProperties, MatchesBruteForceAndEnumeration) {
  std::mt19937_64 gen(1000 + GetParam());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<reference::Vec> points;
    const OracleProblem p = RandomProblem(GetParam(), gen, points);
    const ActionSet actions = EnumerateActionSet(p, 100000);
    EXPECT_LE(std::log(static_cast<double>(actions.size())),
              LogActionCountBound(p) + 1e-9);
    for (int q = 0; q < 5; ++q) {
      Vector nu(p.dim());
      for (auto& x : nu) x = normal(gen);
      const Action a = Solve(p, nu);
      EXPECT_NEAR(a.Dot(nu), reference::MaxValue(points, nu), 1e-9);
      EXPECT_TRUE(actions.Contains(a, 1e-7)) << a.ToString();
      // Positive homogeneity.
      Vector scaled = nu;
      for (auto& x : scaled) x *= 3.5;
      EXPECT_NEAR(Solve(p, scaled).Dot(scaled), 3.5 * a.Dot(nu),
                  1e-9 * std::max(1.0, std::abs(a.Dot(nu))));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllTypes, OracleProperties, ::testing::Range(0, 5));

TEST(ExtremePointsTest, KeepsOrderAndCollapsesDuplicates) {
  const ActionSet a = ExtremePoints(
      {Action{0, 1}, Action{1, 0}, Action{0, 1}, Action{0.5, 0.5}});
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0], (Action{0, 1}));
  EXPECT_EQ(a[1], (Action{1, 0}));
}

}  // namespace
}  // namespace cpe
