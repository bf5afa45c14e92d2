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

#include "cpe/bench.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "cpe/error.hpp"

namespace cpe {
namespace {

TEST(GeneratorTest, KnapsackShapeAndDeterminism) {
  Xoshiro256 a(4), b(4);
  const GeneratedInstance x = GenerateKnapsack(10, a), y = GenerateKnapsack(10, b);
  const auto* kx = x.problem.get_if<KnapsackProblem>();
  const auto* ky = y.problem.get_if<KnapsackProblem>();
  ASSERT_NE(kx, nullptr);
  EXPECT_EQ(kx->weights, ky->weights);
  EXPECT_EQ(x.instance.means, y.instance.means);
  EXPECT_EQ(kx->capacity, 50);
  EXPECT_EQ(x.instance.noise_sd, 0.1);
  EXPECT_EQ(x.instance.r_constant, 0.1);
}

TEST(GeneratorTest, KnapsackValueBand) {
  Xoshiro256 rng(4);
  for (int draw = 0; draw < 1000; ++draw) {
    const GeneratedInstance g = GenerateKnapsack(10, rng);
    const auto* k = g.problem.get_if<KnapsackProblem>();
    for (std::size_t s = 0; s < 10; ++s) {
      const auto w = static_cast<double>(k->weights[s]);
      ASSERT_GE(w, 1.0);
      ASSERT_LE(w, 50.0);
      ASSERT_LT(std::abs(g.instance.means[s] / w - 1.0), 0.6);
    }
  }
}

TEST(GeneratorTest, ProductionShape) {
  Xoshiro256 rng(8);
  for (int draw = 0; draw < 1000; ++draw) {
    const GeneratedInstance g = GenerateProduction(10, 3, rng);
    const auto* p = g.problem.get_if<ProductionProblem>();
    ASSERT_NE(p, nullptr);
    ASSERT_EQ(p->requirements.size(), 3u);
    for (std::size_t s = 0; s < 10; ++s) {
      double column = 0.0;
      for (const auto& row : p->requirements) {
        ASSERT_GE(row[s], 1.0);
        ASSERT_LE(row[s], 4.0);
        ASSERT_EQ(row[s], std::floor(row[s]));
        column += row[s];
      }
      ASSERT_LE(std::abs(g.instance.means[s] - column), 5.0);
    }
    for (double v : p->limits) ASSERT_EQ(v, 30.0);
    ASSERT_EQ(g.instance.noise_sd, 0.1);
    ASSERT_EQ(g.instance.r_constant, 0.1);
  }
}

TEST(GeneratorTest, Parse) {
  EXPECT_EQ(ParseGenerator("production"), Generator::kProduction);
  EXPECT_THROW(ParseGenerator("assignment"), Error);
}

ExperimentSpec EasySpec() {
  ExperimentSpec spec;
  spec.generator = Generator::kCustom;
  spec.runs = 1;
  spec.d = 2;
  spec.custom.emplace(GeneratedInstance{BanditInstance{{10.0, 0.0}, 0.1, 0.1},
                                        OracleProblem(TopKProblem{2, 1})});
  return spec;
}

TEST(CompareTest, TrivialInstanceHasUnitRatio) {
  const ComparisonResult r = CompareStrategies(EasySpec());
  ASSERT_EQ(r.ratios.size(), 1u);
  EXPECT_EQ(r.ratios[0], 1.0);
  EXPECT_EQ(r.records[0].rounds, 2);
  EXPECT_TRUE(r.records[0].correct && r.records[1].correct);
  EXPECT_EQ(r.naive.correct_fraction, 1.0);
}

TEST(CompareTest, CappedRunsAreExcluded) {
  ExperimentSpec spec;
  spec.d = 6;
  spec.runs = 3;
  spec.config.max_rounds = 7;
  spec.master_seed = 2;
  const ComparisonResult r = CompareStrategies(spec);
  EXPECT_EQ(r.records.size(), 6u);
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    excluded += !(r.records[2 * i].stopped_naturally &&
                  r.records[2 * i + 1].stopped_naturally);
  }
  EXPECT_EQ(r.excluded_runs, excluded);
  EXPECT_EQ(r.ratios.size() + r.excluded_runs, 3u);
  for (const auto& rec : r.records) EXPECT_LE(rec.rounds, 7);
}

TEST(CompareTest, ReproducibleAndIndependentOfJobs) {
  ExperimentSpec spec;
  spec.d = 4;
  spec.runs = 6;
  spec.master_seed = 7;
  spec.config.max_rounds = 200000;
  const ComparisonResult a = CompareStrategies(spec);
  spec.jobs = 3;
  std::vector<std::size_t> seen;
  spec.on_run = [&](const RunRecord& naive, const RunRecord& rcpe) {
    EXPECT_EQ(naive.run_index, rcpe.run_index);
    EXPECT_EQ(naive.strategy, Strategy::kNaive);
    EXPECT_EQ(rcpe.strategy, Strategy::kRCpe);
    seen.push_back(naive.run_index);
  };
  const ComparisonResult b = CompareStrategies(spec);
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  std::ostringstream ca, cb;
  WriteCsv(a, ca);
  WriteCsv(b, cb);
  EXPECT_EQ(ca.str(), cb.str());
  EXPECT_EQ(SummaryJson(spec, a).dump(), SummaryJson(spec, b).dump());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].run_index, i / 2);
    EXPECT_EQ(a.records[i].strategy, i % 2 ? Strategy::kRCpe : Strategy::kNaive);
    EXPECT_GE(a.records[i].rounds, 4);
  }
  for (double x : a.ratios) EXPECT_GT(x, 0.0);
}

TEST(CompareTest, CsvAndSummaryLayout) {
  ExperimentSpec spec = EasySpec();
  const ComparisonResult r = CompareStrategies(spec);
  std::ostringstream csv;
  WriteCsv(r, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "run_index,strategy,rounds,correct,seed");
  const nlohmann::json s = SummaryJson(spec, r);
  for (const char* key : {"naive", "rcpe", "ratio", "excluded_runs", "runs"}) {
    EXPECT_TRUE(s.contains(key)) << key;
  }
  EXPECT_EQ(s["ratio"]["mean"], 1.0);
}

TEST(CompareTest, Validation) {
  ExperimentSpec spec = EasySpec();
  spec.runs = 0;
  EXPECT_THROW(CompareStrategies(spec), Error);
  spec = EasySpec();
  spec.custom.reset();
  EXPECT_THROW(CompareStrategies(spec), Error);
}

}  // namespace
}  // namespace cpe
